#include "ddm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ddm {

SparseMatrix SparseMatrix::from_triplets(int n, std::vector<Triplet> triplets) {
    if (n < 0) throw std::invalid_argument("from_triplets: negative dimension");
    for (const auto& t : triplets)
        if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n)
            throw std::invalid_argument("from_triplets: index out of range");

    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    SparseMatrix m;
    m.n_ = n;
    m.row_offsets_.assign(n + 1, 0);
    m.column_indices_.reserve(triplets.size());
    m.values_.reserve(triplets.size());
    for (std::size_t k = 0; k < triplets.size();) {
        const int row = triplets[k].row;
        const int col = triplets[k].col;
        double sum = 0.0;
        while (k < triplets.size() && triplets[k].row == row && triplets[k].col == col)
            sum += triplets[k++].value;
        m.column_indices_.push_back(col);
        m.values_.push_back(sum);
        ++m.row_offsets_[row + 1];
    }
    for (int r = 0; r < n; ++r) m.row_offsets_[r + 1] += m.row_offsets_[r];
    return m;
}

double SparseMatrix::entry(int i, int j) const {
    if (i < 0 || i >= n_ || j < 0 || j >= n_)
        throw std::invalid_argument("entry: index out of range");
    const auto begin = column_indices_.begin() + row_offsets_[i];
    const auto end = column_indices_.begin() + row_offsets_[i + 1];
    const auto it = std::lower_bound(begin, end, j);
    if (it == end || *it != j) return 0.0;
    return values_[it - column_indices_.begin()];
}

std::vector<double> matvec(const SparseMatrix& a, std::span<const double> x) {
    if (static_cast<int>(x.size()) != a.size())
        throw std::invalid_argument("matvec: dimension mismatch");
    const auto offsets = a.row_offsets();
    const auto cols = a.column_indices();
    const auto vals = a.values();
    std::vector<double> y(a.size(), 0.0);
    for (int i = 0; i < a.size(); ++i) {
        double s = 0.0;
        for (int k = offsets[i]; k < offsets[i + 1]; ++k) s += vals[k] * x[cols[k]];
        y[i] = s;
    }
    return y;
}

namespace {

double dot2(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot2(a, a)); }

}  // namespace

CgResult solve_cg(const SparseMatrix& a, std::span<const double> b, const CgConfig& config) {
    const int n = a.size();
    if (static_cast<int>(b.size()) != n) throw std::invalid_argument("solve_cg: dimension mismatch");
    if (!(config.rel_tolerance > 0.0 && config.rel_tolerance < 1.0))
        throw std::invalid_argument("solve_cg: rel_tolerance must be in (0,1)");
    const int max_iterations = config.max_iterations > 0 ? config.max_iterations : 10 * n;
    if (max_iterations < 1) throw std::invalid_argument("solve_cg: max_iterations must be >= 1");
    for (double bi : b)
        if (!std::isfinite(bi)) throw std::invalid_argument("solve_cg: non-finite rhs");

    CgResult result;
    result.x.assign(n, 0.0);
    const double b_norm = norm2(b);
    if (b_norm == 0.0) return result;

    std::vector<double> diag_inv(n);
    {
        const auto offsets = a.row_offsets();
        const auto cols = a.column_indices();
        const auto vals = a.values();
        for (int i = 0; i < n; ++i) {
            double d = 0.0;
            for (int k = offsets[i]; k < offsets[i + 1]; ++k)
                if (cols[k] == i) d = vals[k];
            if (!(d > 0.0))
                throw SolverError("solve_cg: non-positive diagonal entry at row " +
                                      std::to_string(i),
                                  b_norm);
            diag_inv[i] = 1.0 / d;
        }
    }

    std::vector<double> r(b.begin(), b.end());
    std::vector<double> z(n), p(n);
    for (int i = 0; i < n; ++i) z[i] = diag_inv[i] * r[i];
    p = z;
    double rz = dot2(r, z);
    const double tol = config.rel_tolerance * b_norm;

    double r_norm = b_norm;
    for (int iter = 1; iter <= max_iterations; ++iter) {
        const std::vector<double> ap = matvec(a, p);
        const double p_ap = dot2(p, ap);
        if (!(p_ap > 0.0))
            throw SolverError("solve_cg: matrix not positive definite", r_norm);
        const double alpha = rz / p_ap;
        for (int i = 0; i < n; ++i) {
            result.x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        r_norm = norm2(r);
        result.iterations = iter;
        result.residual_norm = r_norm;
        if (r_norm <= tol) return result;
        for (int i = 0; i < n; ++i) z[i] = diag_inv[i] * r[i];
        const double rz_next = dot2(r, z);
        const double beta = rz_next / rz;
        rz = rz_next;
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    throw SolverError("solve_cg: no convergence in " + std::to_string(max_iterations) +
                          " iterations, residual " + std::to_string(r_norm),
                      r_norm);
}

std::vector<double> solve_dense_oracle(const SparseMatrix& a, std::span<const double> b) {
    const int n = a.size();
    if (static_cast<int>(b.size()) != n)
        throw std::invalid_argument("solve_dense_oracle: dimension mismatch");

    std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
    {
        const auto offsets = a.row_offsets();
        const auto cols = a.column_indices();
        const auto vals = a.values();
        for (int i = 0; i < n; ++i)
            for (int k = offsets[i]; k < offsets[i + 1]; ++k)
                m[static_cast<std::size_t>(i) * n + cols[k]] = vals[k];
    }
    std::vector<double> x(b.begin(), b.end());

    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(m[static_cast<std::size_t>(col) * n + col]);
        for (int r = col + 1; r < n; ++r) {
            const double v = std::abs(m[static_cast<std::size_t>(r) * n + col]);
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best == 0.0) throw std::invalid_argument("solve_dense_oracle: singular matrix");
        if (pivot != col) {
            for (int c = 0; c < n; ++c)
                std::swap(m[static_cast<std::size_t>(pivot) * n + c],
                          m[static_cast<std::size_t>(col) * n + c]);
            std::swap(x[pivot], x[col]);
        }
        const double inv = 1.0 / m[static_cast<std::size_t>(col) * n + col];
        for (int r = col + 1; r < n; ++r) {
            const double factor = m[static_cast<std::size_t>(r) * n + col] * inv;
            if (factor == 0.0) continue;
            m[static_cast<std::size_t>(r) * n + col] = 0.0;
            for (int c = col + 1; c < n; ++c)
                m[static_cast<std::size_t>(r) * n + c] -=
                    factor * m[static_cast<std::size_t>(col) * n + c];
            x[r] -= factor * x[col];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        double s = x[r];
        for (int c = r + 1; c < n; ++c) s -= m[static_cast<std::size_t>(r) * n + c] * x[c];
        x[r] = s / m[static_cast<std::size_t>(r) * n + r];
    }
    return x;
}

}  // namespace ddm
