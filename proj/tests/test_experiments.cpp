#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "ddm/experiments.hpp"
#include "ddm/io.hpp"

using namespace ddm;

TEST_SUITE_BEGIN("experiments");

TEST_CASE("eps sweep on a small mesh") {
    ExperimentSpec spec;
    spec.kind = ExperimentKind::EpsSweep;
    spec.base_n = 24;
    spec.eps_list = {0.25, 0.125, 0.0625};

    int observed = 0;
    spec.observer = [&](const RunRecord& rec) {
        CHECK(rec.row_index == observed);
        CHECK(rec.param == spec.eps_list[observed]);
        CHECK(rec.report.free_dofs == rec.solution.free_dofs);
        CHECK(rec.mesh.vertex_count() == 25 * 25);
        ++observed;
    };

    const ConvergenceTable table = run_eps_sweep(spec);
    CHECK(observed == 3);
    REQUIRE(table.rows.size() == 3);
    CHECK(table.parameter_name == "eps");
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(table.rows[i].first == spec.eps_list[i]);
        CHECK(table.rows[i].second.delta > 0.0);
        CHECK(table.rows[i].second.kappa > 0.0);
        CHECK(table.rows[i].second.l2 > 0.0);
    }
    // error decreases with eps at this scale
    CHECK(table.rows[2].second.l2 < table.rows[0].second.l2);

    ExperimentSpec bad = spec;
    bad.eps_list = {};
    CHECK_THROWS_AS(run_eps_sweep(bad), std::invalid_argument);
    bad.eps_list = {0.0625, 0.125};
    CHECK_THROWS_AS(run_eps_sweep(bad), std::invalid_argument);
}

TEST_CASE("experiment determinism") {
    ExperimentSpec spec;
    spec.kind = ExperimentKind::EpsSweep;
    spec.base_n = 16;
    spec.eps_list = {0.25, 0.125};

    const ConvergenceTable t1 = run_eps_sweep(spec);
    const ConvergenceTable t2 = run_eps_sweep(spec);

    const auto dir = std::filesystem::temp_directory_path() / "ddm_exp_test";
    std::filesystem::create_directories(dir);
    write_csv(t1, dir / "t1.csv");
    write_csv(t2, dir / "t2.csv");
    std::ifstream f1(dir / "t1.csv"), f2(dir / "t2.csv");
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
}

TEST_CASE("uniform h sweep") {
    ExperimentSpec spec;
    spec.kind = ExperimentKind::HSweepUniform;
    spec.mesh_sizes = {8, 16};
    spec.eps = 1.0 / 64.0;

    const ConvergenceTable table = run_h_sweep_uniform(spec);
    REQUIRE(table.rows.size() == 2);
    CHECK(table.parameter_name == "h");
    CHECK(table.rows[0].first == doctest::Approx(0.5 * std::sqrt(2.0)).epsilon(1e-14));
    CHECK(table.rows[1].first == doctest::Approx(table.rows[0].first / 2.0).epsilon(1e-14));
    CHECK(table.rows[1].second.h1_full < table.rows[0].second.h1_full);

    ExperimentSpec bad = spec;
    bad.mesh_sizes = {8, 24};
    CHECK_THROWS_AS(run_h_sweep_uniform(bad), std::invalid_argument);
}

TEST_CASE("locally refined h sweep reaches its targets") {
    ExperimentSpec spec;
    spec.kind = ExperimentKind::HSweepLocal;
    spec.mesh_sizes = {8, 16};
    spec.eps = 1.0 / 64.0;

    const ConvergenceTable table = run_h_sweep_local(spec);
    REQUIRE(table.rows.size() == 2);
    for (const auto& [param, report] : table.rows) {
        const double h = param;  // base-mesh h
        CHECK(report.delta <= h * h);
        CHECK(report.kappa <= 4.0 * report.delta);
        CHECK(report.h == doctest::Approx(h).epsilon(1e-13));
    }
    CHECK(table.rows[1].second.l2 < table.rows[0].second.l2);

    ExperimentSpec hopeless = spec;
    hopeless.mesh_sizes = {8};
    hopeless.max_refine_passes = 0;
    CHECK_THROWS_AS(run_h_sweep_local(hopeless), RefinementError);
}

TEST_CASE("default specs match the experiment defaults") {
    const ExperimentSpec e = default_eps_sweep(false);
    CHECK(e.base_n == 288);
    REQUIRE(e.eps_list.size() == 12);
    CHECK(e.eps_list.front() == 0.5);
    CHECK(e.eps_list.back() == std::ldexp(1.0, -12));

    const ExperimentSpec ef = default_eps_sweep(true);
    CHECK(ef.base_n == 576);
    CHECK(ef.eps_list.size() == 20);

    const ExperimentSpec h = default_h_sweep_uniform(false);
    CHECK(h.mesh_sizes == std::vector<int>{72, 144, 288});
    CHECK(h.eps == std::ldexp(1.0, -20));

    const ExperimentSpec hf = default_h_sweep_local(true);
    CHECK(hf.mesh_sizes == std::vector<int>{72, 144, 288, 576});
}

TEST_SUITE_END();
