#pragma once

#include <array>
#include <vector>

#include "ddm/geometry.hpp"

namespace ddm {

/// Conforming triangulation of the square (-2,2)^2. Triangles are
/// counterclockwise. refinement_edge[t] is the local index (0..2) of the edge
/// opposite the newest vertex; edge k connects local vertices (k+1)%3 and
/// (k+2)%3. generation[t] counts bisections since the initial mesh.
struct Mesh {
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<int> refinement_edge;
    std::vector<char> boundary_vertex;
    std::vector<int> generation;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int triangle_count() const { return static_cast<int>(triangles.size()); }
};

struct MeshMetrics {
    double h = 0.0;                    // max element diameter
    double min_angle_deg = 0.0;
    double max_diam_to_inradius = 0.0; // shape-regularity witness
    int vertex_count = 0;
    int triangle_count = 0;
};

/// Criss-cross mesh with n x n cells, each split along the same diagonal;
/// (n+1)^2 vertices and 2 n^2 triangles. Throws std::invalid_argument for
/// n < 1.
Mesh build_uniform(int n);

/// Red refinement: every triangle split into 4 similar children.
Mesh refine_uniform(const Mesh& mesh);

/// Newest-vertex bisection of the marked triangles with conformity closure.
/// Every marked triangle is bisected at least once.
Mesh refine_marked(const Mesh& mesh, const std::vector<int>& marked);

MeshMetrics mesh_metrics(const Mesh& mesh);

double triangle_area(const Mesh& mesh, int t);
double triangle_diameter(const Mesh& mesh, int t);

}  // namespace ddm
