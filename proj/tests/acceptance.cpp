// Acceptance suite: runs the three convergence experiments at their reference
// scales plus the oracle and invariant checks, printing one PASS/FAIL line per
// criterion. Exit code 0 iff everything passes.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ddm/experiments.hpp"
#include "ddm/io.hpp"
#include "support.hpp"

using namespace ddm;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& msg) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += msg;
        }
    }
};

int g_failures = 0;

void report(int index, const std::string& name, const Outcome& outcome) {
    std::printf("[%d] %-34s %s%s%s\n", index, name.c_str(), outcome.pass ? "PASS" : "FAIL",
                outcome.detail.empty() ? "" : "  -- ", outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

struct RateWindow {
    NormSelector norm;
    double reference_rate;  // predicted slope, drives the fit window
    double lo;
    double hi;
    const char* label;
};

Outcome check_rates(const ConvergenceTable& table, const std::vector<RateWindow>& windows) {
    Outcome outcome;
    std::string rates;
    for (const auto& w : windows) {
        try {
            const int k = presaturation_rows_for_rate(table, w.norm, w.reference_rate);
            const double rate = fit_rate_window(table, w.norm, 0, k);
            rates += std::string(w.label) + "=" + fmt(rate) + "(" + std::to_string(k) + " rows) ";
            outcome.require(rate >= w.lo && rate <= w.hi,
                            std::string(w.label) + " rate " + fmt(rate) + " outside [" +
                                fmt(w.lo) + "," + fmt(w.hi) + "]");
        } catch (const std::exception& e) {
            outcome.require(false, std::string(w.label) + ": " + e.what());
        }
    }
    if (outcome.detail.empty()) outcome.detail = rates;
    return outcome;
}

// Independent Galerkin-orthogonality measurement: reassemble and compute the
// free-dof residual from scratch for every experiment run.
struct ResidualAudit {
    double worst_ratio = 0.0;
    int runs = 0;

    void observe(const RunRecord& rec) {
        const SparseMatrix a = assemble_stiffness(rec.mesh);
        const TestProblem problem = poisson_circle_problem();
        const std::vector<double> f = interpolate_nodal(rec.mesh, problem.source_f);
        const std::vector<double> b = assemble_load(rec.mesh, f);
        const std::vector<double> au = matvec(a, rec.solution.coefficients);
        double b_inf = 0.0;
        for (double v : b) b_inf = std::max(b_inf, std::abs(v));
        double r_inf = 0.0;
        for (int v = 0; v < rec.mesh.vertex_count(); ++v)
            if (!rec.solution.classification.constrained_vertex[v])
                r_inf = std::max(r_inf, std::abs(b[v] - au[v]));
        worst_ratio = std::max(worst_ratio, r_inf / b_inf);
        ++runs;
    }
};

}  // namespace

int main() {
    const std::filesystem::path out_dir = "acceptance_out";
    std::filesystem::create_directories(out_dir);
    const TestProblem problem = poisson_circle_problem();

    ResidualAudit audit;
    const auto observer = [&audit](const RunRecord& rec) { audit.observe(rec); };

    // ---- experiment tables ------------------------------------------------
    ExperimentSpec spec1 = default_eps_sweep(false);
    spec1.observer = observer;
    const ConvergenceTable table1 = run_eps_sweep(spec1);
    write_csv(table1, out_dir / "rates_eps.csv");
    {
        const SvgSeries series[] = {{NormSelector::L2, 1.0, "L2 error, O(eps)"},
                                    {NormSelector::H1Full, 0.5, "H1 error, O(sqrt(eps))"},
                                    {NormSelector::LinfOmega, 1.0, "Linf error, O(eps)"}};
        write_svg_loglog(table1, series, out_dir / "rates_eps.svg");
    }

    ExperimentSpec spec2 = default_h_sweep_uniform(false);
    spec2.observer = observer;
    const ConvergenceTable table2 = run_h_sweep_uniform(spec2);
    write_csv(table2, out_dir / "rates_h_uniform.csv");
    {
        const SvgSeries series[] = {{NormSelector::L2, 1.0, "L2 error, O(h)"},
                                    {NormSelector::H1Full, 0.5, "H1 error, O(sqrt(h))"},
                                    {NormSelector::LinfOmega, 1.0, "Linf error, O(h)"}};
        write_svg_loglog(table2, series, out_dir / "rates_h_uniform.svg");
    }

    ExperimentSpec spec3 = default_h_sweep_local(false);
    spec3.observer = observer;
    ConvergenceTable table3;
    std::string exp3_error;
    try {
        table3 = run_h_sweep_local(spec3);
        write_csv(table3, out_dir / "rates_h_local.csv");
        const SvgSeries series[] = {{NormSelector::L2, 2.0, "L2 error, O(h^2)"},
                                    {NormSelector::H1Full, 1.0, "H1 error, O(h)"},
                                    {NormSelector::LinfOmega, 2.0, "Linf error, O(h^2)"}};
        write_svg_loglog(table3, series, out_dir / "rates_h_local.svg");
    } catch (const std::exception& e) {
        exp3_error = e.what();
    }

    // ---- criterion 1: rates in eps ----------------------------------------
    report(1, "rates in eps (fixed mesh)",
           check_rates(table1, {{NormSelector::L2, 1.0, 0.75, 1.25, "L2"},
                                {NormSelector::H1Full, 0.5, 0.35, 0.65, "H1"},
                                {NormSelector::LinfOmega, 1.0, 0.75, 1.25, "Linf"}}));

    // ---- criterion 2: rates in h, uniform ----------------------------------
    report(2, "rates in h (uniform meshes)",
           check_rates(table2, {{NormSelector::L2, 1.0, 0.75, 1.25, "L2"},
                                {NormSelector::H1Full, 0.5, 0.35, 0.65, "H1"},
                                {NormSelector::LinfOmega, 1.0, 0.75, 1.25, "Linf"}}));

    // ---- criterion 3: rates in h, locally refined --------------------------
    {
        Outcome outcome;
        if (!exp3_error.empty()) {
            outcome.require(false, exp3_error);
        } else {
            outcome = check_rates(table3, {{NormSelector::L2, 2.0, 1.6, 2.4, "L2"},
                                           {NormSelector::H1Full, 1.0, 0.8, 1.2, "H1"},
                                           {NormSelector::LinfOmega, 2.0, 1.6, 2.4, "Linf"}});
            for (const auto& [h, row] : table3.rows) {
                outcome.require(row.delta <= h * h, "row violates delta <= h^2");
                outcome.require(row.kappa <= 4.0 * row.delta, "row violates kappa <= 4 delta");
            }
        }
        report(3, "rates in h (local refinement)", outcome);
    }

    // ---- criterion 4: solver and assembly oracles --------------------------
    {
        Outcome outcome;
        for (int n : {16, 32, 48}) {
            const Mesh mesh = build_uniform(n);
            const LayerClassification cls = classify(mesh, problem.interface, 0.125);
            const SparseMatrix a = assemble_stiffness(mesh);
            const std::vector<double> f = interpolate_nodal(mesh, problem.source_f);
            const std::vector<double> b = assemble_load(mesh, f);
            const std::vector<double> g =
                interpolate_nodal(mesh, problem.boundary_extension_g);
            const ReducedSystem red = apply_constraints(a, b, cls, g);
            outcome.require(red.matrix.size() <= 5000, "system exceeds oracle scale");

            CgConfig config;
            const CgResult cg = solve_cg(red.matrix, red.rhs, config);
            const std::vector<double> direct = solve_dense_oracle(red.matrix, red.rhs);
            double err = 0.0, scale = 0.0;
            for (int i = 0; i < red.matrix.size(); ++i) {
                err = std::max(err, std::abs(cg.x[i] - direct[i]));
                scale = std::max(scale, std::abs(direct[i]));
            }
            outcome.require(err <= 1e-8 * scale,
                            "cg vs dense oracle " + fmt(err / scale / 1e-8) + "e-8 at n=" +
                                std::to_string(n));
        }
        const Mesh bisected = refine_marked(
            build_uniform(8), mark_layer_boundary(build_uniform(8), problem.interface, 0.25));
        for (const Mesh& mesh : {build_uniform(4), build_uniform(8), bisected}) {
            const SparseMatrix a = assemble_stiffness(mesh);
            const SparseMatrix oracle =
                ddm_test::quadrature_stiffness(mesh, quadrature_degree2());
            double worst = 0.0;
            for (int i = 0; i < a.size(); ++i)
                for (int k = a.row_offsets()[i]; k < a.row_offsets()[i + 1]; ++k)
                    worst = std::max(worst, std::abs(a.values()[k] -
                                                     oracle.entry(i, a.column_indices()[k])));
            outcome.require(worst <= 1e-13, "stiffness vs quadrature oracle: " + fmt(worst / 1e-13) + "e-13");
        }
        report(4, "oracle equivalence", outcome);
    }

    // ---- criterion 5: invariant suite --------------------------------------
    {
        Outcome outcome;

        // (a) mesh invariants across 20 random marked-refinement sequences
        std::mt19937 rng(2026);
        for (int seq = 0; seq < 20; ++seq) {
            Mesh mesh = build_uniform(4 + seq % 3);
            for (int pass = 0; pass < 4; ++pass) {
                std::uniform_int_distribution<int> pick(0, mesh.triangle_count() - 1);
                std::set<int> marked;
                const int count = 1 + pick(rng) % std::max(1, mesh.triangle_count() / 8);
                for (int k = 0; k < count; ++k) marked.insert(pick(rng));
                mesh = refine_marked(mesh, std::vector<int>(marked.begin(), marked.end()));
                const auto check = ddm_test::check_mesh(mesh);
                outcome.require(check.conforming, "conformity lost");
                outcome.require(check.oriented, "orientation lost");
                outcome.require(std::abs(check.area_sum - 16.0) <= 1e-10, "area drifted");
            }
        }

        // (b) layer monotonicity for 50 random eps pairs on 5 meshes
        std::uniform_real_distribution<double> eps_dist(0.02, 0.45);
        for (int n : {8, 12, 16, 24, 32}) {
            const Mesh mesh = build_uniform(n);
            for (int k = 0; k < 10; ++k) {
                double e1 = eps_dist(rng), e2 = eps_dist(rng);
                if (e1 > e2) std::swap(e1, e2);
                const bool ok = layer_monotonicity_check(classify(mesh, problem.interface, e1),
                                                         classify(mesh, problem.interface, e2));
                outcome.require(ok, "layer monotonicity violated at n=" + std::to_string(n));
            }
        }

        // (c) Galerkin orthogonality on every experiment run, measured
        //     independently by the audit observer
        outcome.require(audit.runs == 18, "expected 18 audited runs, saw " +
                                              std::to_string(audit.runs));
        outcome.require(audit.worst_ratio <= 1e-9,
                        "worst Galerkin residual ratio " + fmt(audit.worst_ratio / 1e-9) + "e-9");

        // (d) discrete maximum principle for f == 0
        {
            TestProblem homogeneous = problem;
            homogeneous.source_f = [](Vec2) { return 0.0; };
            Mesh fine = build_uniform(32);
            Mesh local = refine_marked(
                fine, mark_layer_boundary(fine, homogeneous.interface, 1.0 / 64.0));
            local = refine_marked(
                local, mark_layer_boundary(local, homogeneous.interface, 1.0 / 64.0));
            for (const Mesh& mesh : {fine, local}) {
                const FemSolution sol = solve_diffuse(homogeneous, mesh, 1.0 / 64.0);
                double lo = 0.0, hi = 0.0;
                for (int v = 0; v < mesh.vertex_count(); ++v)
                    if (sol.classification.constrained_vertex[v]) {
                        lo = std::min(lo, sol.coefficients[v]);
                        hi = std::max(hi, sol.coefficients[v]);
                    }
                for (int v = 0; v < mesh.vertex_count(); ++v)
                    if (!sol.classification.constrained_vertex[v]) {
                        const double u = sol.coefficients[v];
                        outcome.require(u >= lo - 1e-12 * std::abs(lo) - 1e-15 &&
                                            u <= hi + 1e-12 * std::abs(hi) + 1e-15,
                                        "maximum principle violated");
                    }
            }
        }

        // (e) continuity of the exact solution across the interface
        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        for (int i = 0; i < 1000; ++i) {
            const double th = angle(rng);
            const Vec2 p{std::cos(th), std::sin(th)};
            outcome.require(
                std::abs(circle_problem::u_inner(p) - circle_problem::u_outer(p)) <= 1e-12,
                "exact solution jumps across the interface");
        }

        if (outcome.detail.empty())
            outcome.detail = "worst residual ratio " + fmt(audit.worst_ratio / 1e-9) + "e-9";
        report(5, "invariant suite", outcome);
    }

    // ---- criterion 6: monotone decay, then saturation ----------------------
    {
        Outcome outcome;
        for (const auto& [selector, label] :
             std::vector<std::pair<NormSelector, const char*>>{
                 {NormSelector::L2, "L2"},
                 {NormSelector::H1Full, "H1"},
                 {NormSelector::LinfOmega, "Linf"}}) {
            const int sat = presaturation_rows(table1, selector);
            for (std::size_t i = 1; i < table1.rows.size(); ++i) {
                const double prev = report_norm(table1.rows[i - 1].second, selector);
                const double cur = report_norm(table1.rows[i].second, selector);
                if (static_cast<int>(i) < sat)
                    outcome.require(cur <= prev * (1.0 + 1e-12),
                                    std::string(label) + " not monotone before saturation");
                else
                    outcome.require(std::abs(cur - prev) / prev < 0.10,
                                    std::string(label) + " varies >= 10% after saturation at row " +
                                        std::to_string(i));
            }
        }
        report(6, "monotone saturation", outcome);
    }

    if (g_failures == 0)
        std::printf("acceptance: all criteria passed\n");
    else
        std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
