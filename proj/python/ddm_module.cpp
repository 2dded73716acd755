#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ddm/experiments.hpp"
#include "ddm/io.hpp"

namespace py = pybind11;
using namespace ddm;

namespace {

py::array_t<double> vertices_array(const Mesh& mesh) {
    py::array_t<double> out({mesh.vertex_count(), 2});
    auto view = out.mutable_unchecked<2>();
    for (int v = 0; v < mesh.vertex_count(); ++v) {
        view(v, 0) = mesh.vertices[v].x;
        view(v, 1) = mesh.vertices[v].y;
    }
    return out;
}

py::array_t<int> triangles_array(const Mesh& mesh) {
    py::array_t<int> out({mesh.triangle_count(), 3});
    auto view = out.mutable_unchecked<2>();
    for (int t = 0; t < mesh.triangle_count(); ++t)
        for (int k = 0; k < 3; ++k) view(t, k) = mesh.triangles[t][k];
    return out;
}

template <typename T>
py::array_t<T> vector_array(const std::vector<T>& v) {
    return py::array_t<T>(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())},
                          v.data());
}

py::array_t<signed char> labels_array(const LayerClassification& c) {
    std::vector<signed char> labels(c.element_class.size());
    for (std::size_t t = 0; t < c.element_class.size(); ++t) {
        switch (c.element_class[t]) {
            case ElementClass::Inside: labels[t] = -1; break;
            case ElementClass::Layer: labels[t] = 0; break;
            case ElementClass::Outside: labels[t] = 1; break;
        }
    }
    return vector_array(labels);
}

Vec2 to_vec2(std::pair<double, double> p) { return {p.first, p.second}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "P1 finite elements for Poisson problems with a diffuse-layer "
              "Dirichlet condition on an embedded interface";

    py::register_exception<DegenerateLayerError>(m, "DegenerateLayerError", PyExc_ValueError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
    py::register_exception<RefinementError>(m, "RefinementError", PyExc_RuntimeError);

    // geometry
    m.def("clamp_profile", &clamp_profile, py::arg("t"));
    m.def("omega_eps", &omega_eps, py::arg("d"), py::arg("eps"));
    m.def(
        "circle_signed_distance",
        [](std::pair<double, double> x) { return circle_signed_distance(to_vec2(x)); },
        py::arg("x"));

    py::class_<LevelSet>(m, "LevelSet")
        .def("evaluate",
             [](const LevelSet& ls, std::pair<double, double> x) {
                 return ls.evaluate(to_vec2(x));
             })
        .def("gradient", [](const LevelSet& ls, std::pair<double, double> x) {
            const Vec2 g = ls.gradient(to_vec2(x));
            return std::make_pair(g.x, g.y);
        });
    m.def("circle_level_set", &circle_level_set);

    py::class_<TestProblem>(m, "TestProblem")
        .def_property_readonly("interface",
                               [](const TestProblem& p) { return p.interface; })
        .def("exact_u",
             [](const TestProblem& p, std::pair<double, double> x) {
                 return evaluate_exact(p, to_vec2(x)).u;
             })
        .def("exact_grad",
             [](const TestProblem& p, std::pair<double, double> x) {
                 const Vec2 g = evaluate_exact(p, to_vec2(x)).grad;
                 return std::make_pair(g.x, g.y);
             })
        .def("source",
             [](const TestProblem& p, std::pair<double, double> x) {
                 return evaluate_source(p, to_vec2(x));
             })
        .def("boundary_extension_g", [](const TestProblem& p, std::pair<double, double> x) {
            return p.boundary_extension_g(to_vec2(x));
        });
    m.def("poisson_circle_problem", &poisson_circle_problem);

    // mesh
    py::class_<Mesh>(m, "Mesh")
        .def_property_readonly("vertex_count", &Mesh::vertex_count)
        .def_property_readonly("triangle_count", &Mesh::triangle_count)
        .def_property_readonly("vertices", &vertices_array)
        .def_property_readonly("triangles", &triangles_array)
        .def_property_readonly(
            "boundary_vertex",
            [](const Mesh& mesh) {
                std::vector<signed char> flags(mesh.boundary_vertex.begin(),
                                               mesh.boundary_vertex.end());
                return vector_array(flags);
            })
        .def("__repr__", [](const Mesh& mesh) {
            return "<Mesh " + std::to_string(mesh.vertex_count()) + " vertices, " +
                   std::to_string(mesh.triangle_count()) + " triangles>";
        });

    py::class_<MeshMetrics>(m, "MeshMetrics")
        .def_readonly("h", &MeshMetrics::h)
        .def_readonly("min_angle_deg", &MeshMetrics::min_angle_deg)
        .def_readonly("max_diam_to_inradius", &MeshMetrics::max_diam_to_inradius)
        .def_readonly("vertex_count", &MeshMetrics::vertex_count)
        .def_readonly("triangle_count", &MeshMetrics::triangle_count);

    m.def("build_uniform", &build_uniform, py::arg("n"));
    m.def("refine_uniform", &refine_uniform, py::arg("mesh"));
    m.def("refine_marked", &refine_marked, py::arg("mesh"), py::arg("marked"));
    m.def("mesh_metrics", &mesh_metrics, py::arg("mesh"));

    // layer
    py::class_<LayerClassification>(m, "LayerClassification")
        .def_readonly("eps", &LayerClassification::eps)
        .def_readonly("delta", &LayerClassification::delta)
        .def_readonly("kappa", &LayerClassification::kappa)
        .def_property_readonly("element_class", &labels_array)
        .def_property_readonly("constrained_vertex",
                               [](const LayerClassification& c) {
                                   std::vector<signed char> flags(c.constrained_vertex.begin(),
                                                                  c.constrained_vertex.end());
                                   return vector_array(flags);
                               })
        .def_property_readonly("nodal_distance", [](const LayerClassification& c) {
            return vector_array(c.nodal_distance);
        });
    m.def("classify", &classify, py::arg("mesh"), py::arg("level_set"), py::arg("eps"));
    m.def("layer_monotonicity_check", &layer_monotonicity_check, py::arg("c1"), py::arg("c2"));
    m.def("mark_layer_boundary", &mark_layer_boundary, py::arg("mesh"), py::arg("level_set"),
          py::arg("eps"));

    // fem + analysis
    py::class_<CgConfig>(m, "CgConfig")
        .def(py::init<>())
        .def_readwrite("rel_tolerance", &CgConfig::rel_tolerance)
        .def_readwrite("max_iterations", &CgConfig::max_iterations);

    py::class_<FemSolution>(m, "FemSolution")
        .def_property_readonly("coefficients",
                               [](const FemSolution& s) { return vector_array(s.coefficients); })
        .def_readonly("classification", &FemSolution::classification)
        .def_readonly("free_dofs", &FemSolution::free_dofs)
        .def_readonly("cg_iterations", &FemSolution::cg_iterations)
        .def_readonly("galerkin_residual_inf", &FemSolution::galerkin_residual_inf)
        .def_readonly("load_inf", &FemSolution::load_inf);

    m.def("solve_diffuse", &solve_diffuse, py::arg("problem"), py::arg("mesh"), py::arg("eps"),
          py::arg("config") = CgConfig{});

    py::class_<ErrorReport>(m, "ErrorReport")
        .def_readonly("l2", &ErrorReport::l2)
        .def_readonly("h1_semi", &ErrorReport::h1_semi)
        .def_readonly("h1_full", &ErrorReport::h1_full)
        .def_readonly("linf_omega", &ErrorReport::linf_omega)
        .def_readonly("linf_outside", &ErrorReport::linf_outside)
        .def_readonly("eps", &ErrorReport::eps)
        .def_readonly("h", &ErrorReport::h)
        .def_readonly("delta", &ErrorReport::delta)
        .def_readonly("kappa", &ErrorReport::kappa)
        .def_readonly("free_dofs", &ErrorReport::free_dofs)
        .def_readonly("vertices", &ErrorReport::vertices);

    m.def("error_norms", &error_norms, py::arg("mesh"), py::arg("solution"), py::arg("problem"),
          py::arg("cut_subdivision_depth") = 3);

    py::enum_<NormSelector>(m, "NormSelector")
        .value("L2", NormSelector::L2)
        .value("H1Semi", NormSelector::H1Semi)
        .value("H1Full", NormSelector::H1Full)
        .value("LinfOmega", NormSelector::LinfOmega)
        .value("LinfOutside", NormSelector::LinfOutside);

    py::class_<ConvergenceTable>(m, "ConvergenceTable")
        .def_readonly("parameter_name", &ConvergenceTable::parameter_name)
        .def_property_readonly("params",
                               [](const ConvergenceTable& t) {
                                   std::vector<double> p;
                                   for (const auto& row : t.rows) p.push_back(row.first);
                                   return p;
                               })
        .def_property_readonly("reports", [](const ConvergenceTable& t) {
            std::vector<ErrorReport> r;
            for (const auto& row : t.rows) r.push_back(row.second);
            return r;
        });

    m.def("fit_rate", &fit_rate, py::arg("table"), py::arg("norm"), py::arg("window_last_k"));
    m.def("fit_rate_window", &fit_rate_window, py::arg("table"), py::arg("norm"),
          py::arg("first_row"), py::arg("row_count"));
    m.def("presaturation_rows", &presaturation_rows, py::arg("table"), py::arg("norm"));

    // experiments
    py::enum_<ExperimentKind>(m, "ExperimentKind")
        .value("EpsSweep", ExperimentKind::EpsSweep)
        .value("HSweepUniform", ExperimentKind::HSweepUniform)
        .value("HSweepLocal", ExperimentKind::HSweepLocal);

    py::class_<ExperimentSpec>(m, "ExperimentSpec")
        .def(py::init<>())
        .def_readwrite("kind", &ExperimentSpec::kind)
        .def_readwrite("eps_list", &ExperimentSpec::eps_list)
        .def_readwrite("mesh_sizes", &ExperimentSpec::mesh_sizes)
        .def_readwrite("eps", &ExperimentSpec::eps)
        .def_readwrite("base_n", &ExperimentSpec::base_n)
        .def_readwrite("max_refine_passes", &ExperimentSpec::max_refine_passes)
        .def_readwrite("cut_subdivision_depth", &ExperimentSpec::cut_subdivision_depth);

    m.def("default_eps_sweep", &default_eps_sweep, py::arg("full") = false);
    m.def("default_h_sweep_uniform", &default_h_sweep_uniform, py::arg("full") = false);
    m.def("default_h_sweep_local", &default_h_sweep_local, py::arg("full") = false);
    m.def("run_eps_sweep", &run_eps_sweep, py::arg("spec"),
          py::call_guard<py::gil_scoped_release>());
    m.def("run_h_sweep_uniform", &run_h_sweep_uniform, py::arg("spec"),
          py::call_guard<py::gil_scoped_release>());
    m.def("run_h_sweep_local", &run_h_sweep_local, py::arg("spec"),
          py::call_guard<py::gil_scoped_release>());

    // io
    m.def("write_csv", &write_csv, py::arg("table"), py::arg("path"));
    m.def("read_csv", &read_csv, py::arg("path"));
    m.def("write_mesh_text",
          py::overload_cast<const Mesh&, const std::filesystem::path&>(&write_mesh_text),
          py::arg("mesh"), py::arg("path"));
    m.def("write_solution_text",
          py::overload_cast<const Mesh&, const FemSolution&, const std::filesystem::path&>(
              &write_solution_text),
          py::arg("mesh"), py::arg("solution"), py::arg("path"));
}
