"""P1 finite elements for Poisson problems with a diffuse-layer Dirichlet
condition on an embedded interface."""

from ._core import (
    CgConfig,
    ConvergenceTable,
    DegenerateLayerError,
    ErrorReport,
    ExperimentKind,
    ExperimentSpec,
    FemSolution,
    LayerClassification,
    LevelSet,
    Mesh,
    MeshMetrics,
    NormSelector,
    RefinementError,
    SolverError,
    TestProblem,
    build_uniform,
    circle_level_set,
    circle_signed_distance,
    clamp_profile,
    classify,
    default_eps_sweep,
    default_h_sweep_local,
    default_h_sweep_uniform,
    error_norms,
    fit_rate,
    fit_rate_window,
    layer_monotonicity_check,
    mark_layer_boundary,
    mesh_metrics,
    omega_eps,
    poisson_circle_problem,
    presaturation_rows,
    read_csv,
    refine_marked,
    refine_uniform,
    run_eps_sweep,
    run_h_sweep_local,
    run_h_sweep_uniform,
    solve_diffuse,
    write_csv,
    write_mesh_text,
    write_solution_text,
)

__version__ = "0.1.0"

__all__ = [
    "CgConfig",
    "ConvergenceTable",
    "DegenerateLayerError",
    "ErrorReport",
    "ExperimentKind",
    "ExperimentSpec",
    "FemSolution",
    "LayerClassification",
    "LevelSet",
    "Mesh",
    "MeshMetrics",
    "NormSelector",
    "RefinementError",
    "SolverError",
    "TestProblem",
    "build_uniform",
    "circle_level_set",
    "circle_signed_distance",
    "clamp_profile",
    "classify",
    "default_eps_sweep",
    "default_h_sweep_local",
    "default_h_sweep_uniform",
    "error_norms",
    "fit_rate",
    "fit_rate_window",
    "layer_monotonicity_check",
    "mark_layer_boundary",
    "mesh_metrics",
    "omega_eps",
    "poisson_circle_problem",
    "presaturation_rows",
    "read_csv",
    "refine_marked",
    "refine_uniform",
    "run_eps_sweep",
    "run_h_sweep_local",
    "run_h_sweep_uniform",
    "solve_diffuse",
    "write_csv",
    "write_mesh_text",
    "write_solution_text",
]
