#include "ddm/layer.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace ddm {

ElementClass classify_element(double min_nodal, double max_nodal, double eps) {
    if (min_nodal < eps && max_nodal > -eps) return ElementClass::Layer;
    if (max_nodal <= -eps) return ElementClass::Inside;
    return ElementClass::Outside;
}

bool element_straddles_level(double min_nodal, double max_nodal, double level) {
    return min_nodal <= level && level <= max_nodal;
}

namespace {

void nodal_minmax(const Mesh& mesh, const std::vector<double>& nodal, int t, double& lo,
                  double& hi) {
    const auto& tri = mesh.triangles[t];
    lo = std::min({nodal[tri[0]], nodal[tri[1]], nodal[tri[2]]});
    hi = std::max({nodal[tri[0]], nodal[tri[1]], nodal[tri[2]]});
}

double max_diameter_straddling(const Mesh& mesh, const std::vector<double>& nodal,
                               double level) {
    double result = 0.0;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        double lo, hi;
        nodal_minmax(mesh, nodal, t, lo, hi);
        if (element_straddles_level(lo, hi, level) || element_straddles_level(lo, hi, -level))
            result = std::max(result, triangle_diameter(mesh, t));
    }
    return result;
}

}  // namespace

LayerClassification classify(const Mesh& mesh, const LevelSet& level_set, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("classify: eps must be positive");

    LayerClassification c;
    c.eps = eps;
    c.nodal_distance.resize(mesh.vertex_count());
    for (int v = 0; v < mesh.vertex_count(); ++v)
        c.nodal_distance[v] = level_set.evaluate(mesh.vertices[v]);

    c.element_class.resize(mesh.triangle_count());
    c.layer_vertex.assign(mesh.vertex_count(), 0);
    int inside = 0, outside = 0;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        double lo, hi;
        nodal_minmax(mesh, c.nodal_distance, t, lo, hi);
        const ElementClass cls = classify_element(lo, hi, eps);
        c.element_class[t] = cls;
        if (cls == ElementClass::Inside) ++inside;
        if (cls == ElementClass::Outside) ++outside;
        if (cls == ElementClass::Layer)
            for (int v : mesh.triangles[t]) c.layer_vertex[v] = 1;
    }
    if (inside == 0 || outside == 0)
        throw DegenerateLayerError("classify: layer of width eps leaves no " +
                                   std::string(inside == 0 ? "inside" : "outside") +
                                   " element");

    c.boundary_vertex = mesh.boundary_vertex;
    c.constrained_vertex.resize(mesh.vertex_count());
    for (int v = 0; v < mesh.vertex_count(); ++v)
        c.constrained_vertex[v] = c.layer_vertex[v] || c.boundary_vertex[v];

    c.delta = max_diameter_straddling(mesh, c.nodal_distance, eps);
    c.kappa = max_diameter_straddling(mesh, c.nodal_distance, eps + c.delta);
    return c;
}

bool layer_monotonicity_check(const LayerClassification& c1, const LayerClassification& c2) {
    if (c1.element_class.size() != c2.element_class.size() ||
        c1.nodal_distance.size() != c2.nodal_distance.size())
        throw std::invalid_argument("layer_monotonicity_check: mesh mismatch");
    if (std::memcmp(c1.nodal_distance.data(), c2.nodal_distance.data(),
                    c1.nodal_distance.size() * sizeof(double)) != 0)
        throw std::invalid_argument("layer_monotonicity_check: mesh mismatch");
    if (c1.eps > c2.eps) throw std::invalid_argument("layer_monotonicity_check: eps order");

    for (std::size_t t = 0; t < c1.element_class.size(); ++t)
        if (c1.element_class[t] == ElementClass::Layer &&
            c2.element_class[t] != ElementClass::Layer)
            return false;
    return true;
}

std::vector<int> mark_layer_boundary(const Mesh& mesh, const LevelSet& level_set, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("mark_layer_boundary: eps must be positive");
    std::vector<double> nodal(mesh.vertex_count());
    for (int v = 0; v < mesh.vertex_count(); ++v)
        nodal[v] = level_set.evaluate(mesh.vertices[v]);

    std::vector<int> marked;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        double lo, hi;
        nodal_minmax(mesh, nodal, t, lo, hi);
        if (element_straddles_level(lo, hi, eps) || element_straddles_level(lo, hi, -eps))
            marked.push_back(t);
    }
    return marked;
}

}  // namespace ddm
