#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "ddm/analysis.hpp"

namespace ddm {

class RefinementError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind { EpsSweep, HSweepUniform, HSweepLocal };

struct RunRecord {
    const Mesh& mesh;
    const FemSolution& solution;
    const ErrorReport& report;
    double param = 0.0;
    int row_index = 0;
};

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::EpsSweep;
    std::vector<double> eps_list;    // EpsSweep schedule, descending
    std::vector<int> mesh_sizes;     // h sweeps: subdivisions per side, ascending
    double eps = 0.0;                // fixed layer width for the h sweeps
    int base_n = 288;                // EpsSweep mesh resolution
    int max_refine_passes = 40;      // local-refinement budget per mesh
    int cut_subdivision_depth = 3;
    CgConfig cg;
    std::function<void(const RunRecord&)> observer;  // optional, called per run
};

ExperimentSpec default_eps_sweep(bool full = false);
ExperimentSpec default_h_sweep_uniform(bool full = false);
ExperimentSpec default_h_sweep_local(bool full = false);

/// One solve per eps on a fixed uniform mesh.
ConvergenceTable run_eps_sweep(const ExperimentSpec& spec);

/// One solve per uniform mesh (successive red refinements) at fixed eps.
ConvergenceTable run_h_sweep_uniform(const ExperimentSpec& spec);

/// For each base mesh, refines the elements meeting the layer boundary until
/// delta <= h^2 and kappa <= 4 delta, then solves. Throws RefinementError
/// when the target is not reached within max_refine_passes.
ConvergenceTable run_h_sweep_local(const ExperimentSpec& spec);

}  // namespace ddm
