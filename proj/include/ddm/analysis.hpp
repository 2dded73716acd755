#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ddm/fem.hpp"

namespace ddm {

/// Errors of one run against the exact solution, with the geometry
/// parameters that produced it.
struct ErrorReport {
    double l2 = 0.0;
    double h1_semi = 0.0;
    double h1_full = 0.0;
    double linf_omega = 0.0;    // sampled over the whole domain
    double linf_outside = 0.0;  // sampled outside the discrete layer
    double eps = 0.0;
    double h = 0.0;
    double delta = 0.0;
    double kappa = 0.0;
    int free_dofs = 0;
    int vertices = 0;
};

/// Rows of a parameter sweep; parameter values are strictly monotone.
struct ConvergenceTable {
    std::string parameter_name;  // "eps" or "h"
    std::vector<std::pair<double, ErrorReport>> rows;
};

enum class NormSelector { L2, H1Semi, H1Full, LinfOmega, LinfOutside };

double report_norm(const ErrorReport& report, NormSelector norm);

/// L2/H1 errors by degree-4 quadrature; triangles whose corner distances
/// change sign are subdivided uniformly to the given depth first. Linf is a
/// max over vertices, edge midpoints, and quadrature points.
ErrorReport error_norms(const Mesh& mesh, const FemSolution& solution,
                        const TestProblem& problem, int cut_subdivision_depth = 3);

/// Least-squares slope of log(error) vs log(parameter) over rows
/// [first_row, first_row + row_count). Throws std::invalid_argument for
/// non-positive errors or windows shorter than 2 rows.
double fit_rate_window(const ConvergenceTable& table, NormSelector norm,
                       int first_row, int row_count);

/// Slope over the trailing k rows.
double fit_rate(const ConvergenceTable& table, NormSelector norm, int window_last_k);

/// Length of the leading non-saturated prefix: a row is saturated when its
/// error decreased by less than 10% from the previous row.
int presaturation_rows(const ConvergenceTable& table, NormSelector norm);

/// Rate-aware variant used by the rate fits: a row is saturated when its
/// error decreased by less than half the decrease an O(param^rate) sequence
/// would show between the two parameter values. Insensitive to shoulder rows
/// where the plateau already dominates.
int presaturation_rows_for_rate(const ConvergenceTable& table, NormSelector norm,
                                double reference_rate);

/// Deterministic pairwise summation.
double pairwise_sum(std::span<const double> values);

}  // namespace ddm
