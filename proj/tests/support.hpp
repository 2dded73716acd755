#pragma once

// Test-side oracles, deliberately independent of the library code paths they
// check.

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "ddm/fem.hpp"
#include "ddm/mesh.hpp"

namespace ddm_test {

// Stiffness assembly via reference-element mapping and a quadrature loop:
// physical gradients from the inverse Jacobian, not from edge normals.
inline ddm::SparseMatrix quadrature_stiffness(const ddm::Mesh& mesh,
                                              const ddm::QuadratureRule& rule) {
    static const std::array<std::array<double, 2>, 3> ref_grad = {{{-1.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}}};
    std::vector<ddm::Triplet> triplets;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const auto& tri = mesh.triangles[t];
        const ddm::Vec2 p0 = mesh.vertices[tri[0]];
        const ddm::Vec2 j1 = mesh.vertices[tri[1]] - p0;
        const ddm::Vec2 j2 = mesh.vertices[tri[2]] - p0;
        const double det = j1.x * j2.y - j1.y * j2.x;
        // rows of J^{-T}
        const double it00 = j2.y / det, it01 = -j1.y / det;
        const double it10 = -j2.x / det, it11 = j1.x / det;
        std::array<std::array<double, 2>, 3> grad;
        for (int i = 0; i < 3; ++i)
            grad[i] = {it00 * ref_grad[i][0] + it01 * ref_grad[i][1],
                       it10 * ref_grad[i][0] + it11 * ref_grad[i][1]};
        const double area = 0.5 * det;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double entry = 0.0;
                for (std::size_t q = 0; q < rule.weights.size(); ++q)
                    entry += rule.weights[q] * area *
                             (grad[i][0] * grad[j][0] + grad[i][1] * grad[j][1]);
                triplets.push_back({tri[i], tri[j], entry});
            }
    }
    return ddm::SparseMatrix::from_triplets(mesh.vertex_count(), std::move(triplets));
}

struct MeshCheck {
    bool conforming = true;
    bool oriented = true;
    bool boundary_flags_ok = true;
    double area_sum = 0.0;
};

inline MeshCheck check_mesh(const ddm::Mesh& mesh) {
    MeshCheck result;
    std::map<std::pair<int, int>, int> edge_count;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        if (ddm::triangle_area(mesh, t) <= 0.0) result.oriented = false;
        result.area_sum += ddm::triangle_area(mesh, t);
        const auto& tri = mesh.triangles[t];
        for (int e = 0; e < 3; ++e) {
            int a = tri[(e + 1) % 3], b = tri[(e + 2) % 3];
            if (a > b) std::swap(a, b);
            ++edge_count[{a, b}];
        }
    }
    auto on_outer_boundary = [&](int v) {
        const ddm::Vec2 p = mesh.vertices[v];
        return std::abs(std::abs(p.x) - 2.0) < 1e-12 || std::abs(std::abs(p.y) - 2.0) < 1e-12;
    };
    for (const auto& [edge, count] : edge_count) {
        if (count > 2 || count < 1) result.conforming = false;
        if (count == 1) {
            // a boundary edge must lie on the outer square and be flagged
            if (!mesh.boundary_vertex[edge.first] || !mesh.boundary_vertex[edge.second])
                result.boundary_flags_ok = false;
            if (!on_outer_boundary(edge.first) || !on_outer_boundary(edge.second))
                result.boundary_flags_ok = false;
        }
    }
    for (int v = 0; v < mesh.vertex_count(); ++v)
        if (static_cast<bool>(mesh.boundary_vertex[v]) != on_outer_boundary(v))
            result.boundary_flags_ok = false;
    return result;
}

template <typename F>
double fd_laplacian(const F& field, ddm::Vec2 p, double step) {
    const double fc = field(p);
    const double fx = field({p.x + step, p.y}) + field({p.x - step, p.y});
    const double fy = field({p.x, p.y + step}) + field({p.x, p.y - step});
    return (fx + fy - 4.0 * fc) / (step * step);
}

template <typename F>
ddm::Vec2 fd_gradient(const F& field, ddm::Vec2 p, double step) {
    return {(field({p.x + step, p.y}) - field({p.x - step, p.y})) / (2.0 * step),
            (field({p.x, p.y + step}) - field({p.x, p.y - step})) / (2.0 * step)};
}

}  // namespace ddm_test
