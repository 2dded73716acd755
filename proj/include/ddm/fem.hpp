#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "ddm/geometry.hpp"
#include "ddm/layer.hpp"
#include "ddm/linalg.hpp"
#include "ddm/mesh.hpp"

namespace ddm {

/// Quadrature on the reference triangle in barycentric coordinates; weights
/// sum to one and are scaled by the element area at use.
struct QuadratureRule {
    std::vector<std::array<double, 3>> points;
    std::vector<double> weights;
    int degree = 0;
};

const QuadratureRule& quadrature_degree2();  // 3 edge midpoints
const QuadratureRule& quadrature_degree4();  // 6-point rule

/// Nodal interpolant: one field value per mesh vertex.
std::vector<double> interpolate_nodal(const Mesh& mesh,
                                      const std::function<double(Vec2)>& field);

/// P1 stiffness matrix of the Laplacian; exact constant-gradient integration.
SparseMatrix assemble_stiffness(const Mesh& mesh);

/// Load vector for the nodal interpolant of f, exact per element:
/// b_i = sum_T (area/12) (2 f_i + f_j + f_k).
std::vector<double> assemble_load(const Mesh& mesh, std::span<const double> f_nodal);

struct ReducedSystem {
    SparseMatrix matrix;
    std::vector<double> rhs;
    std::vector<int> free_to_global;        // dof map
    std::vector<int> global_to_free;        // -1 for constrained vertices
    std::vector<double> constrained_values; // per vertex, 0 at free slots
};

/// Symmetric elimination of the constrained vertices: boundary vertices are
/// pinned to 0 (they win over layer membership), layer vertices to g_nodal.
/// Throws std::invalid_argument when no free dof remains.
ReducedSystem apply_constraints(const SparseMatrix& a, std::span<const double> b,
                                const LayerClassification& classification,
                                std::span<const double> g_nodal);

struct FemSolution {
    std::vector<double> coefficients;       // one per mesh vertex
    LayerClassification classification;
    int free_dofs = 0;
    int cg_iterations = 0;
    double galerkin_residual_inf = 0.0;     // ||(b - A u)_free||_inf after solve
    double load_inf = 0.0;                  // ||b||_inf of the unreduced load
};

/// Full pipeline: classify, interpolate g and f, assemble, eliminate
/// constraints, CG solve, expand. The returned coefficients carry the imposed
/// values exactly at constrained vertices.
FemSolution solve_diffuse(const TestProblem& problem, const Mesh& mesh, double eps,
                          const CgConfig& config = {});

}  // namespace ddm
