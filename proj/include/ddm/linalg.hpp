#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ddm {

struct Triplet {
    int row = 0;
    int col = 0;
    double value = 0.0;
};

/// Compressed-row symmetric matrix. Column indices are sorted and unique
/// within each row; duplicate triplets are summed on construction.
class SparseMatrix {
public:
    SparseMatrix() = default;
    static SparseMatrix from_triplets(int n, std::vector<Triplet> triplets);

    int size() const { return n_; }
    std::span<const int> row_offsets() const { return row_offsets_; }
    std::span<const int> column_indices() const { return column_indices_; }
    std::span<const double> values() const { return values_; }

    /// Entry lookup, 0 for absent entries (test helper, O(log row)).
    double entry(int i, int j) const;

private:
    int n_ = 0;
    std::vector<int> row_offsets_{0};
    std::vector<int> column_indices_;
    std::vector<double> values_;
};

std::vector<double> matvec(const SparseMatrix& a, std::span<const double> x);

struct CgConfig {
    double rel_tolerance = 1e-12;
    int max_iterations = 0;  // 0 resolves to 10 * n at solve time
};

struct CgResult {
    std::vector<double> x;
    int iterations = 0;
    double residual_norm = 0.0;
};

class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double final_residual)
        : std::runtime_error(what), final_residual_(final_residual) {}
    double final_residual() const { return final_residual_; }

private:
    double final_residual_ = 0.0;
};

/// Jacobi-preconditioned conjugate gradients for SPD systems. Terminates when
/// ||b - A x||_2 <= rel_tolerance * ||b||_2; throws SolverError otherwise.
CgResult solve_cg(const SparseMatrix& a, std::span<const double> b, const CgConfig& config = {});

/// Dense LU with partial pivoting; test-scale direct solve.
std::vector<double> solve_dense_oracle(const SparseMatrix& a, std::span<const double> b);

}  // namespace ddm
