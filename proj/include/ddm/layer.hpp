#pragma once

#include <stdexcept>
#include <vector>

#include "ddm/mesh.hpp"

namespace ddm {

enum class ElementClass : unsigned char { Inside, Layer, Outside };

/// Raised when the layer swallows one side of the interface entirely.
class DegenerateLayerError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Discrete diffuse-layer classification driven by the nodal interpolant of
/// the signed distance. delta is the max diameter over elements meeting the
/// +-eps level sets, kappa the same for the +-(eps+delta) levels.
struct LayerClassification {
    std::vector<ElementClass> element_class;
    std::vector<char> layer_vertex;        // vertex of some Layer triangle
    std::vector<char> boundary_vertex;     // copied from the mesh
    std::vector<char> constrained_vertex;  // layer_vertex or boundary_vertex
    std::vector<double> nodal_distance;
    double eps = 0.0;
    double delta = 0.0;
    double kappa = 0.0;
};

/// Pure per-element rule: Layer iff min < eps and max > -eps (strict),
/// Inside iff max <= -eps, Outside otherwise.
ElementClass classify_element(double min_nodal, double max_nodal, double eps);

/// Element meets the level set {interpolant = level} iff min <= level <= max.
bool element_straddles_level(double min_nodal, double max_nodal, double level);

/// Classifies all elements. Throws std::invalid_argument for eps <= 0 and
/// DegenerateLayerError when no Inside or no Outside element remains.
LayerClassification classify(const Mesh& mesh, const LevelSet& level_set, double eps);

/// Checks Layer(c1) is a subset of Layer(c2) for c1.eps <= c2.eps on the same
/// mesh. Throws std::invalid_argument on mesh mismatch or eps order.
bool layer_monotonicity_check(const LayerClassification& c1, const LayerClassification& c2);

/// Indices of triangles whose nodal distances straddle +eps or -eps.
std::vector<int> mark_layer_boundary(const Mesh& mesh, const LevelSet& level_set, double eps);

}  // namespace ddm
