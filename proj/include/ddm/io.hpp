#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ddm/analysis.hpp"

namespace ddm {

/// CSV with the fixed header
/// param,eps,h,delta,kappa,l2,h1_semi,h1_full,linf_omega,linf_outside,free_dofs,vertices
/// written with 16 significant digits, byte-deterministic.
void write_csv(const ConvergenceTable& table, const std::filesystem::path& path);
ConvergenceTable read_csv(const std::filesystem::path& path);

struct SvgSeries {
    NormSelector norm = NormSelector::L2;
    double reference_slope = 1.0;
    std::string label;
};

/// Data-to-pixel mapping of one log-log panel.
struct LogLogMapper {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
    double px0 = 0.0, px1 = 0.0, py0 = 0.0, py1 = 0.0;  // py0 = bottom
    Vec2 to_px(double x, double y) const;
};

/// Endpoints in data coordinates of a reference line of the given slope
/// through the anchor point, spanning [xmin, xmax].
std::pair<Vec2, Vec2> svg_reference_endpoints(double anchor_x, double anchor_y,
                                              double slope, double xmin, double xmax);

/// Log-log scatter (crosses) with one solid reference line per series, one
/// panel per series.
void write_svg_loglog(const ConvergenceTable& table, std::span<const SvgSeries> series,
                      const std::filesystem::path& path);

/// Plain-text mesh export: "NV NT", NV lines "x y boundary_flag", NT lines
/// "i j k" (0-based).
void write_mesh_text(const Mesh& mesh, std::ostream& out);
void write_mesh_text(const Mesh& mesh, const std::filesystem::path& path);

/// Per-triangle labels (INSIDE/LAYER/OUTSIDE), aligned with the mesh export.
void write_layer_text(const LayerClassification& classification, std::ostream& out);
void write_layer_text(const LayerClassification& classification,
                      const std::filesystem::path& path);

/// Lines "vertex_index x y value".
void write_solution_text(const Mesh& mesh, const FemSolution& solution, std::ostream& out);
void write_solution_text(const Mesh& mesh, const FemSolution& solution,
                         const std::filesystem::path& path);

}  // namespace ddm
