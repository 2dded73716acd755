import math

import numpy as np
import pytest

import diffuse_dirichlet as dd


def test_geometry_basics():
    assert dd.clamp_profile(0.5) == 0.5
    assert dd.clamp_profile(2.0) == 1.0
    assert dd.omega_eps(0.0, 0.1) == 0.5
    assert dd.circle_signed_distance((2.0, 0.0)) == 1.0
    with pytest.raises(ValueError):
        dd.omega_eps(0.0, -1.0)

    problem = dd.poisson_circle_problem()
    assert problem.exact_u((0.0, 0.0)) == pytest.approx(16.0 * math.e, rel=1e-14)
    assert problem.source((1.5, 0.0)) == pytest.approx(11.5, rel=1e-14)


def test_mesh_and_layer():
    mesh = dd.build_uniform(16)
    assert mesh.vertex_count == 17 * 17
    assert mesh.triangle_count == 2 * 16 * 16
    assert mesh.vertices.shape == (mesh.vertex_count, 2)
    assert mesh.triangles.shape == (mesh.triangle_count, 3)

    metrics = dd.mesh_metrics(mesh)
    assert metrics.h == pytest.approx(4.0 / 16.0 * math.sqrt(2.0), rel=1e-14)
    assert metrics.min_angle_deg == pytest.approx(45.0, rel=1e-12)

    ls = dd.circle_level_set()
    cls = dd.classify(mesh, ls, 0.125)
    labels = cls.element_class
    assert labels.shape == (mesh.triangle_count,)
    assert (labels == -1).sum() > 0  # inside
    assert (labels == 0).sum() > 0   # layer
    assert (labels == 1).sum() > 0   # outside
    assert 0.0 < cls.delta <= metrics.h + 1e-15

    wider = dd.classify(mesh, ls, 0.25)
    assert dd.layer_monotonicity_check(cls, wider)

    marked = dd.mark_layer_boundary(mesh, ls, 0.125)
    refined = dd.refine_marked(mesh, marked)
    assert refined.triangle_count > mesh.triangle_count


def test_solve_and_error_norms():
    problem = dd.poisson_circle_problem()
    mesh = dd.build_uniform(32)
    sol = dd.solve_diffuse(problem, mesh, 0.125)

    assert sol.free_dofs > 0
    assert sol.galerkin_residual_inf <= 1e-9 * sol.load_inf
    coeffs = sol.coefficients
    assert np.all(np.isfinite(coeffs))
    # boundary vertices are pinned to zero
    boundary = np.asarray(mesh.boundary_vertex, dtype=bool)
    assert np.all(coeffs[boundary] == 0.0)

    rep = dd.error_norms(mesh, sol, problem)
    assert 0.0 < rep.l2 < 30.0
    assert rep.h1_full**2 == pytest.approx(rep.l2**2 + rep.h1_semi**2, rel=1e-12)
    assert rep.linf_omega >= rep.linf_outside
    assert rep.vertices == mesh.vertex_count


def test_small_eps_sweep_and_csv(tmp_path):
    spec = dd.ExperimentSpec()
    spec.kind = dd.ExperimentKind.EpsSweep
    spec.base_n = 24
    spec.eps_list = [0.25, 0.125, 0.0625]
    table = dd.run_eps_sweep(spec)

    assert table.parameter_name == "eps"
    assert table.params == [0.25, 0.125, 0.0625]
    errors = [r.l2 for r in table.reports]
    assert errors[2] < errors[0]

    rate = dd.fit_rate(table, dd.NormSelector.L2, 3)
    assert rate > 0.0

    path = tmp_path / "table.csv"
    dd.write_csv(table, path)
    back = dd.read_csv(path)
    assert back.params == pytest.approx(table.params, rel=1e-15)
    assert [r.l2 for r in back.reports] == pytest.approx(errors, rel=1e-15)
