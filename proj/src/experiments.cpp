#include "ddm/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ddm {

namespace {

std::vector<double> eps_schedule(int deepest) {
    std::vector<double> eps;
    for (int i = 1; i <= deepest; ++i) eps.push_back(std::ldexp(1.0, -i));
    return eps;
}

ErrorReport run_one(const ExperimentSpec& spec, const Mesh& mesh, double eps, double param,
                    int row_index, const TestProblem& problem) {
    const FemSolution solution = solve_diffuse(problem, mesh, eps, spec.cg);
    const ErrorReport report = error_norms(mesh, solution, problem, spec.cut_subdivision_depth);
    if (spec.observer) spec.observer({mesh, solution, report, param, row_index});
    return report;
}

}  // namespace

ExperimentSpec default_eps_sweep(bool full) {
    ExperimentSpec spec;
    spec.kind = ExperimentKind::EpsSweep;
    spec.base_n = full ? 576 : 288;
    spec.eps_list = eps_schedule(full ? 20 : 12);
    return spec;
}

ExperimentSpec default_h_sweep_uniform(bool full) {
    ExperimentSpec spec;
    spec.kind = ExperimentKind::HSweepUniform;
    spec.mesh_sizes = full ? std::vector<int>{72, 144, 288, 576} : std::vector<int>{72, 144, 288};
    spec.eps = std::ldexp(1.0, -20);
    return spec;
}

ExperimentSpec default_h_sweep_local(bool full) {
    ExperimentSpec spec = default_h_sweep_uniform(full);
    spec.kind = ExperimentKind::HSweepLocal;
    return spec;
}

ConvergenceTable run_eps_sweep(const ExperimentSpec& spec) {
    if (spec.eps_list.empty()) throw std::invalid_argument("run_eps_sweep: empty eps schedule");
    if (!std::is_sorted(spec.eps_list.rbegin(), spec.eps_list.rend()))
        throw std::invalid_argument("run_eps_sweep: eps schedule must be descending");

    const TestProblem problem = poisson_circle_problem();
    const Mesh mesh = build_uniform(spec.base_n);

    ConvergenceTable table;
    table.parameter_name = "eps";
    for (std::size_t i = 0; i < spec.eps_list.size(); ++i) {
        const double eps = spec.eps_list[i];
        table.rows.emplace_back(
            eps, run_one(spec, mesh, eps, eps, static_cast<int>(i), problem));
    }
    return table;
}

namespace {

std::vector<Mesh> uniform_mesh_family(const std::vector<int>& sizes) {
    if (sizes.empty()) throw std::invalid_argument("h sweep: empty mesh schedule");
    for (std::size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] != 2 * sizes[i - 1])
            throw std::invalid_argument("h sweep: mesh sizes must double");
    std::vector<Mesh> meshes;
    meshes.push_back(build_uniform(sizes.front()));
    for (std::size_t i = 1; i < sizes.size(); ++i)
        meshes.push_back(refine_uniform(meshes.back()));
    return meshes;
}

}  // namespace

ConvergenceTable run_h_sweep_uniform(const ExperimentSpec& spec) {
    if (!(spec.eps > 0.0)) throw std::invalid_argument("run_h_sweep_uniform: eps must be positive");
    const TestProblem problem = poisson_circle_problem();
    const std::vector<Mesh> meshes = uniform_mesh_family(spec.mesh_sizes);

    ConvergenceTable table;
    table.parameter_name = "h";
    for (std::size_t i = 0; i < meshes.size(); ++i) {
        const double h = mesh_metrics(meshes[i]).h;
        table.rows.emplace_back(
            h, run_one(spec, meshes[i], spec.eps, h, static_cast<int>(i), problem));
    }
    return table;
}

ConvergenceTable run_h_sweep_local(const ExperimentSpec& spec) {
    if (!(spec.eps > 0.0)) throw std::invalid_argument("run_h_sweep_local: eps must be positive");
    const TestProblem problem = poisson_circle_problem();
    const std::vector<Mesh> bases = uniform_mesh_family(spec.mesh_sizes);

    ConvergenceTable table;
    table.parameter_name = "h";
    for (std::size_t i = 0; i < bases.size(); ++i) {
        const double h_base = mesh_metrics(bases[i]).h;
        const double delta_target = h_base * h_base;

        Mesh mesh = bases[i];
        bool reached = false;
        for (int pass = 0; pass < spec.max_refine_passes; ++pass) {
            const LayerClassification cls = classify(mesh, problem.interface, spec.eps);
            if (cls.delta <= delta_target && cls.kappa <= 4.0 * cls.delta) {
                reached = true;
                break;
            }
            std::vector<int> marked;
            for (int t : mark_layer_boundary(mesh, problem.interface, spec.eps))
                if (triangle_diameter(mesh, t) > delta_target) marked.push_back(t);
            for (int t : mark_layer_boundary(mesh, problem.interface, spec.eps + cls.delta))
                if (triangle_diameter(mesh, t) > 4.0 * cls.delta) marked.push_back(t);
            if (marked.empty())
                throw RefinementError(
                    "run_h_sweep_local: no candidate triangles although target unmet");
            std::sort(marked.begin(), marked.end());
            marked.erase(std::unique(marked.begin(), marked.end()), marked.end());
            mesh = refine_marked(mesh, marked);
        }
        if (!reached)
            throw RefinementError("run_h_sweep_local: target delta <= h^2, kappa <= 4 delta "
                                  "not reached within " +
                                  std::to_string(spec.max_refine_passes) + " passes for n = " +
                                  std::to_string(spec.mesh_sizes[i]));

        ErrorReport report =
            run_one(spec, mesh, spec.eps, h_base, static_cast<int>(i), problem);
        if (!(report.delta <= delta_target && report.kappa <= 4.0 * report.delta))
            throw RefinementError("run_h_sweep_local: recorded row violates its target");
        table.rows.emplace_back(h_base, report);
    }
    return table;
}

}  // namespace ddm
