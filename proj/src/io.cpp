#include "ddm/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace ddm {

namespace {

constexpr const char* kCsvHeader =
    "param,eps,h,delta,kappa,l2,h1_semi,h1_full,linf_omega,linf_outside,free_dofs,vertices";

std::string format_double(double v, int precision) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general,
                                   precision);
    if (res.ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::runtime_error("read_csv: malformed number '" + std::string(s) + "'");
    return v;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    return out;
}

}  // namespace

void write_csv(const ConvergenceTable& table, const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    out << kCsvHeader << '\n';
    for (const auto& [param, r] : table.rows) {
        out << format_double(param, 16) << ',' << format_double(r.eps, 16) << ','
            << format_double(r.h, 16) << ',' << format_double(r.delta, 16) << ','
            << format_double(r.kappa, 16) << ',' << format_double(r.l2, 16) << ','
            << format_double(r.h1_semi, 16) << ',' << format_double(r.h1_full, 16) << ','
            << format_double(r.linf_omega, 16) << ',' << format_double(r.linf_outside, 16)
            << ',' << r.free_dofs << ',' << r.vertices << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

ConvergenceTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw std::runtime_error("read_csv: unexpected header in " + path.string());

    ConvergenceTable table;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string_view> fields;
        std::string_view rest = line;
        while (true) {
            const auto comma = rest.find(',');
            fields.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
        if (fields.size() != 12)
            throw std::runtime_error("read_csv: expected 12 fields per row");
        ErrorReport r;
        const double param = parse_double(fields[0]);
        r.eps = parse_double(fields[1]);
        r.h = parse_double(fields[2]);
        r.delta = parse_double(fields[3]);
        r.kappa = parse_double(fields[4]);
        r.l2 = parse_double(fields[5]);
        r.h1_semi = parse_double(fields[6]);
        r.h1_full = parse_double(fields[7]);
        r.linf_omega = parse_double(fields[8]);
        r.linf_outside = parse_double(fields[9]);
        r.free_dofs = static_cast<int>(parse_double(fields[10]));
        r.vertices = static_cast<int>(parse_double(fields[11]));
        table.rows.emplace_back(param, r);
    }
    return table;
}

Vec2 LogLogMapper::to_px(double x, double y) const {
    const double lx = (std::log(x) - std::log(xmin)) / (std::log(xmax) - std::log(xmin));
    const double ly = (std::log(y) - std::log(ymin)) / (std::log(ymax) - std::log(ymin));
    return {px0 + lx * (px1 - px0), py0 + ly * (py1 - py0)};
}

std::pair<Vec2, Vec2> svg_reference_endpoints(double anchor_x, double anchor_y, double slope,
                                              double xmin, double xmax) {
    auto at = [&](double x) { return anchor_y * std::pow(x / anchor_x, slope); };
    return {Vec2{xmin, at(xmin)}, Vec2{xmax, at(xmax)}};
}

namespace {

struct Panel {
    LogLogMapper map;
    double x_off = 0.0;
};

std::string px(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
    return std::string(buf, res.ptr);
}

}  // namespace

void write_svg_loglog(const ConvergenceTable& table, std::span<const SvgSeries> series,
                      const std::filesystem::path& path) {
    if (table.rows.empty()) throw std::invalid_argument("write_svg_loglog: empty table");
    const double panel_w = 360.0, panel_h = 320.0, margin = 48.0;
    const double width = panel_w * static_cast<double>(series.size());

    std::ofstream out = open_output(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << panel_h << "\" viewBox=\"0 0 " << width << ' ' << panel_h << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        double xmin = table.rows.front().first, xmax = xmin;
        double ymin = report_norm(table.rows.front().second, series[s].norm), ymax = ymin;
        for (const auto& [param, r] : table.rows) {
            const double err = report_norm(r, series[s].norm);
            if (!(param > 0.0 && err > 0.0))
                throw std::invalid_argument("write_svg_loglog: non-positive data");
            xmin = std::min(xmin, param);
            xmax = std::max(xmax, param);
            ymin = std::min(ymin, err);
            ymax = std::max(ymax, err);
        }
        if (xmin == xmax) {
            xmin *= 0.5;
            xmax *= 2.0;
        }
        const double anchor_x = table.rows.front().first;
        const double anchor_y = report_norm(table.rows.front().second, series[s].norm);
        const auto [ref_a, ref_b] =
            svg_reference_endpoints(anchor_x, anchor_y, series[s].reference_slope, xmin, xmax);
        ymin = std::min({ymin, ref_a.y, ref_b.y});
        ymax = std::max({ymax, ref_a.y, ref_b.y});
        if (ymin == ymax) {
            ymin *= 0.5;
            ymax *= 2.0;
        }

        Panel panel;
        panel.x_off = panel_w * static_cast<double>(s);
        panel.map = {xmin, xmax, ymin, ymax,
                     panel.x_off + margin, panel.x_off + panel_w - 16.0,
                     panel_h - margin, 16.0};

        // axes
        out << "<line x1=\"" << px(panel.map.px0) << "\" y1=\"" << px(panel.map.py0)
            << "\" x2=\"" << px(panel.map.px1) << "\" y2=\"" << px(panel.map.py0)
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        out << "<line x1=\"" << px(panel.map.px0) << "\" y1=\"" << px(panel.map.py0)
            << "\" x2=\"" << px(panel.map.px0) << "\" y2=\"" << px(panel.map.py1)
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

        // decade ticks
        for (int axis = 0; axis < 2; ++axis) {
            const double lo = axis == 0 ? xmin : ymin;
            const double hi = axis == 0 ? xmax : ymax;
            for (int e = static_cast<int>(std::ceil(std::log10(lo))); std::pow(10.0, e) <= hi;
                 ++e) {
                const double v = std::pow(10.0, e);
                const Vec2 p = axis == 0 ? panel.map.to_px(v, ymin) : panel.map.to_px(xmin, v);
                if (axis == 0) {
                    out << "<line x1=\"" << px(p.x) << "\" y1=\"" << px(panel.map.py0)
                        << "\" x2=\"" << px(p.x) << "\" y2=\"" << px(panel.map.py0 + 5)
                        << "\" stroke=\"black\"/>\n";
                    out << "<text x=\"" << px(p.x) << "\" y=\"" << px(panel.map.py0 + 18)
                        << "\" font-size=\"10\" text-anchor=\"middle\">1e" << e << "</text>\n";
                } else {
                    out << "<line x1=\"" << px(panel.map.px0 - 5) << "\" y1=\"" << px(p.y)
                        << "\" x2=\"" << px(panel.map.px0) << "\" y2=\"" << px(p.y)
                        << "\" stroke=\"black\"/>\n";
                    out << "<text x=\"" << px(panel.map.px0 - 8) << "\" y=\"" << px(p.y + 3)
                        << "\" font-size=\"10\" text-anchor=\"end\">1e" << e << "</text>\n";
                }
            }
        }

        // reference line (solid)
        const Vec2 ra = panel.map.to_px(ref_a.x, ref_a.y);
        const Vec2 rb = panel.map.to_px(ref_b.x, ref_b.y);
        out << "<line x1=\"" << px(ra.x) << "\" y1=\"" << px(ra.y) << "\" x2=\"" << px(rb.x)
            << "\" y2=\"" << px(rb.y) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

        // data crosses
        for (const auto& [param, r] : table.rows) {
            const Vec2 p = panel.map.to_px(param, report_norm(r, series[s].norm));
            out << "<path d=\"M" << px(p.x - 3) << ' ' << px(p.y - 3) << " L" << px(p.x + 3)
                << ' ' << px(p.y + 3) << " M" << px(p.x - 3) << ' ' << px(p.y + 3) << " L"
                << px(p.x + 3) << ' ' << px(p.y - 3)
                << "\" stroke=\"black\" stroke-width=\"1.2\" fill=\"none\"/>\n";
        }

        out << "<text x=\"" << px(panel.x_off + panel_w / 2) << "\" y=\"14\" font-size=\"12\" "
            << "text-anchor=\"middle\">" << series[s].label << "</text>\n";
        out << "<text x=\"" << px(panel.x_off + panel_w / 2) << "\" y=\""
            << px(panel_h - 6.0) << "\" font-size=\"11\" text-anchor=\"middle\">"
            << table.parameter_name << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_mesh_text(const Mesh& mesh, std::ostream& out) {
    out << mesh.vertex_count() << ' ' << mesh.triangle_count() << '\n';
    for (int v = 0; v < mesh.vertex_count(); ++v)
        out << format_double(mesh.vertices[v].x, 17) << ' '
            << format_double(mesh.vertices[v].y, 17) << ' '
            << (mesh.boundary_vertex[v] ? 1 : 0) << '\n';
    for (const auto& tri : mesh.triangles)
        out << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
}

void write_mesh_text(const Mesh& mesh, const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    write_mesh_text(mesh, out);
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_layer_text(const LayerClassification& classification, std::ostream& out) {
    for (ElementClass c : classification.element_class) {
        switch (c) {
            case ElementClass::Inside: out << "INSIDE\n"; break;
            case ElementClass::Layer: out << "LAYER\n"; break;
            case ElementClass::Outside: out << "OUTSIDE\n"; break;
        }
    }
}

void write_layer_text(const LayerClassification& classification,
                      const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    write_layer_text(classification, out);
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_solution_text(const Mesh& mesh, const FemSolution& solution, std::ostream& out) {
    for (int v = 0; v < mesh.vertex_count(); ++v)
        out << v << ' ' << format_double(mesh.vertices[v].x, 17) << ' '
            << format_double(mesh.vertices[v].y, 17) << ' '
            << format_double(solution.coefficients[v], 17) << '\n';
}

void write_solution_text(const Mesh& mesh, const FemSolution& solution,
                         const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    write_solution_text(mesh, solution, out);
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace ddm
