#include "ddm/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace ddm {

namespace {

std::uint64_t edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

double signed_area(Vec2 a, Vec2 b, Vec2 c) { return 0.5 * cross(b - a, c - a); }

int longest_edge_index(const Mesh& mesh, const std::array<int, 3>& tri) {
    double best = -1.0;
    int best_e = 0;
    for (int e = 0; e < 3; ++e) {
        const Vec2 pa = mesh.vertices[tri[(e + 1) % 3]];
        const Vec2 pb = mesh.vertices[tri[(e + 2) % 3]];
        const double len = norm(pb - pa);
        if (len > best) {
            best = len;
            best_e = e;
        }
    }
    return best_e;
}

}  // namespace

double triangle_area(const Mesh& mesh, int t) {
    const auto& tri = mesh.triangles[t];
    return signed_area(mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]);
}

double triangle_diameter(const Mesh& mesh, int t) {
    const auto& tri = mesh.triangles[t];
    double d = 0.0;
    for (int e = 0; e < 3; ++e)
        d = std::max(d, norm(mesh.vertices[tri[(e + 1) % 3]] - mesh.vertices[tri[(e + 2) % 3]]));
    return d;
}

Mesh build_uniform(int n) {
    if (n < 1) throw std::invalid_argument("build_uniform: n must be >= 1");
    Mesh mesh;
    const int nv = (n + 1) * (n + 1);
    mesh.vertices.reserve(nv);
    mesh.boundary_vertex.reserve(nv);
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            mesh.vertices.push_back({-2.0 + 4.0 * i / n, -2.0 + 4.0 * j / n});
            mesh.boundary_vertex.push_back(i == 0 || i == n || j == 0 || j == n);
        }
    }
    auto vid = [n](int i, int j) { return j * (n + 1) + i; };
    mesh.triangles.reserve(2 * n * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int a = vid(i, j);
            const int b = vid(i + 1, j);
            const int c = vid(i + 1, j + 1);
            const int d = vid(i, j + 1);
            mesh.triangles.push_back({a, b, c});
            mesh.refinement_edge.push_back(1);  // hypotenuse (c, a)
            mesh.triangles.push_back({a, c, d});
            mesh.refinement_edge.push_back(2);  // hypotenuse (a, c)
        }
    }
    mesh.generation.assign(mesh.triangles.size(), 0);
    return mesh;
}

Mesh refine_uniform(const Mesh& mesh) {
    Mesh out;
    out.vertices = mesh.vertices;
    out.boundary_vertex = mesh.boundary_vertex;

    // Edge incidence counts decide boundary status of the new midpoints.
    std::unordered_map<std::uint64_t, int> edge_count;
    for (const auto& tri : mesh.triangles)
        for (int e = 0; e < 3; ++e) ++edge_count[edge_key(tri[(e + 1) % 3], tri[(e + 2) % 3])];

    std::unordered_map<std::uint64_t, int> midpoint;
    auto mid = [&](int a, int b) {
        const auto key = edge_key(a, b);
        auto it = midpoint.find(key);
        if (it != midpoint.end()) return it->second;
        const int v = out.vertex_count();
        out.vertices.push_back(0.5 * (mesh.vertices[a] + mesh.vertices[b]));
        out.boundary_vertex.push_back(edge_count.at(key) == 1);
        midpoint.emplace(key, v);
        return v;
    };

    out.triangles.reserve(4 * mesh.triangles.size());
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tri = mesh.triangles[t];
        const int m01 = mid(tri[0], tri[1]);
        const int m12 = mid(tri[1], tri[2]);
        const int m20 = mid(tri[2], tri[0]);
        const std::array<std::array<int, 3>, 4> children = {{
            {tri[0], m01, m20},
            {m01, tri[1], m12},
            {m20, m12, tri[2]},
            {m01, m12, m20},
        }};
        for (const auto& child : children) {
            out.triangles.push_back(child);
            out.refinement_edge.push_back(longest_edge_index(out, child));
            out.generation.push_back(mesh.generation[t] + 2);
        }
    }
    return out;
}

Mesh refine_marked(const Mesh& mesh, const std::vector<int>& marked) {
    const int nt = mesh.triangle_count();
    for (int t : marked)
        if (t < 0 || t >= nt) throw std::invalid_argument("refine_marked: triangle index out of range");
    if (marked.empty()) return mesh;

    // Edge -> incident triangles, for the closure worklist and boundary flags.
    std::unordered_map<std::uint64_t, std::array<int, 2>> edge_tris;
    edge_tris.reserve(mesh.triangles.size() * 2);
    for (int t = 0; t < nt; ++t) {
        const auto& tri = mesh.triangles[t];
        for (int e = 0; e < 3; ++e) {
            auto [it, inserted] = edge_tris.try_emplace(
                edge_key(tri[(e + 1) % 3], tri[(e + 2) % 3]), std::array<int, 2>{-1, -1});
            (it->second[0] == -1 ? it->second[0] : it->second[1]) = t;
        }
    }

    auto ref_edge_key = [&](int t) {
        const auto& tri = mesh.triangles[t];
        const int e = mesh.refinement_edge[t];
        return edge_key(tri[(e + 1) % 3], tri[(e + 2) % 3]);
    };

    // Mark refinement edges of the marked triangles, then close: a triangle
    // with any marked edge must have its refinement edge marked. Each newly
    // marked edge only affects its two incident triangles.
    std::unordered_map<std::uint64_t, int> marked_edges;  // key -> midpoint (filled later)
    std::vector<std::uint64_t> work;
    auto mark_edge = [&](std::uint64_t key) {
        if (marked_edges.emplace(key, -1).second) work.push_back(key);
    };
    for (int t : marked) mark_edge(ref_edge_key(t));
    while (!work.empty()) {
        const auto key = work.back();
        work.pop_back();
        for (int t : edge_tris.at(key)) {
            if (t >= 0) mark_edge(ref_edge_key(t));
        }
    }

    Mesh out;
    out.vertices = mesh.vertices;
    out.boundary_vertex = mesh.boundary_vertex;
    for (auto& [key, vertex] : marked_edges) {
        const int a = static_cast<int>(key >> 32);
        const int b = static_cast<int>(key & 0xffffffffu);
        vertex = out.vertex_count();
        out.vertices.push_back(0.5 * (mesh.vertices[a] + mesh.vertices[b]));
        out.boundary_vertex.push_back(edge_tris.at(key)[1] == -1);
    }

    // Bisect through the refinement edge; a child whose inherited parent edge
    // is also marked is bisected once more (inherited edges of grandchildren
    // are new half-edges, never marked).
    auto emit = [&](const auto& self, std::array<int, 3> tri, int ref_edge, int gen) -> void {
        const auto key = edge_key(tri[(ref_edge + 1) % 3], tri[(ref_edge + 2) % 3]);
        const auto it = marked_edges.find(key);
        if (it == marked_edges.end()) {
            out.triangles.push_back(tri);
            out.refinement_edge.push_back(ref_edge);
            out.generation.push_back(gen);
            return;
        }
        const int a = tri[(ref_edge + 1) % 3];
        const int b = tri[(ref_edge + 2) % 3];
        const int p = tri[ref_edge];
        const int m = it->second;
        self(self, {a, m, p}, 1, gen + 1);
        self(self, {m, b, p}, 0, gen + 1);
    };
    for (int t = 0; t < nt; ++t)
        emit(emit, mesh.triangles[t], mesh.refinement_edge[t], mesh.generation[t]);
    return out;
}

MeshMetrics mesh_metrics(const Mesh& mesh) {
    MeshMetrics m;
    m.vertex_count = mesh.vertex_count();
    m.triangle_count = mesh.triangle_count();
    double min_angle = std::numbers::pi;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const auto& tri = mesh.triangles[t];
        double longest = 0.0;
        double perimeter = 0.0;
        for (int e = 0; e < 3; ++e) {
            const Vec2 u = mesh.vertices[tri[(e + 1) % 3]] - mesh.vertices[tri[e]];
            const Vec2 v = mesh.vertices[tri[(e + 2) % 3]] - mesh.vertices[tri[e]];
            min_angle = std::min(min_angle, std::atan2(std::abs(cross(u, v)), dot(u, v)));
            const double len = norm(mesh.vertices[tri[(e + 2) % 3]] - mesh.vertices[tri[(e + 1) % 3]]);
            longest = std::max(longest, len);
            perimeter += len;
        }
        m.h = std::max(m.h, longest);
        const double inradius = 2.0 * triangle_area(mesh, t) / perimeter;
        m.max_diam_to_inradius = std::max(m.max_diam_to_inradius, longest / inradius);
    }
    m.min_angle_deg = min_angle * 180.0 / std::numbers::pi;
    return m;
}

}  // namespace ddm
