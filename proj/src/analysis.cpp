#include "ddm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ddm {

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 16) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double report_norm(const ErrorReport& report, NormSelector norm) {
    switch (norm) {
        case NormSelector::L2: return report.l2;
        case NormSelector::H1Semi: return report.h1_semi;
        case NormSelector::H1Full: return report.h1_full;
        case NormSelector::LinfOmega: return report.linf_omega;
        case NormSelector::LinfOutside: return report.linf_outside;
    }
    throw std::invalid_argument("report_norm: unknown selector");
}

namespace {

struct TriangleAccumulator {
    double l2 = 0.0;
    double h1 = 0.0;
    double linf = 0.0;
};

struct P1Field {
    Vec2 p0;
    double inv_two_area = 0.0;
    Vec2 e1, e2;       // p1 - p0, p2 - p0
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;
    Vec2 grad;

    P1Field(Vec2 a, Vec2 b, Vec2 c, double v0, double v1, double v2)
        : p0(a), e1(b - a), e2(c - a), c0(v0), c1(v1), c2(v2) {
        const double two_area = cross(e1, e2);
        inv_two_area = 1.0 / two_area;
        // gradient of the affine interpolant
        const double gx = (c1 - c0) * e2.y - (c2 - c0) * e1.y;
        const double gy = (c2 - c0) * e1.x - (c1 - c0) * e2.x;
        grad = {gx * inv_two_area, gy * inv_two_area};
    }

    double value(Vec2 p) const {
        const Vec2 d = p - p0;
        const double l1 = cross(d, e2) * inv_two_area;
        const double l2v = cross(e1, d) * inv_two_area;
        return c0 * (1.0 - l1 - l2v) + c1 * l1 + c2 * l2v;
    }
};

}  // namespace

ErrorReport error_norms(const Mesh& mesh, const FemSolution& solution,
                        const TestProblem& problem, int cut_subdivision_depth) {
    if (cut_subdivision_depth < 0)
        throw std::invalid_argument("error_norms: negative subdivision depth");
    const QuadratureRule& rule = quadrature_degree4();

    ErrorReport report;
    report.eps = solution.classification.eps;
    report.delta = solution.classification.delta;
    report.kappa = solution.classification.kappa;
    report.free_dofs = solution.free_dofs;
    report.vertices = mesh.vertex_count();

    std::vector<double> l2_parts(mesh.triangle_count());
    std::vector<double> h1_parts(mesh.triangle_count());
    double linf_omega = 0.0;
    double linf_outside = 0.0;
    double h_max = 0.0;

    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const auto& tri = mesh.triangles[t];
        const Vec2 a = mesh.vertices[tri[0]];
        const Vec2 b = mesh.vertices[tri[1]];
        const Vec2 c = mesh.vertices[tri[2]];
        h_max = std::max(h_max, triangle_diameter(mesh, t));

        const P1Field uh(a, b, c, solution.coefficients[tri[0]],
                         solution.coefficients[tri[1]], solution.coefficients[tri[2]]);

        TriangleAccumulator acc;
        auto sample_point = [&](Vec2 p) {
            const double err = std::abs(problem.exact_u(p) - uh.value(p));
            acc.linf = std::max(acc.linf, err);
        };
        auto quad_cell = [&](Vec2 qa, Vec2 qb, Vec2 qc) {
            const double area = 0.5 * cross(qb - qa, qc - qa);
            for (std::size_t q = 0; q < rule.points.size(); ++q) {
                const auto& bc = rule.points[q];
                const Vec2 p = bc[0] * qa + bc[1] * qb + bc[2] * qc;
                const double du = problem.exact_u(p) - uh.value(p);
                const Vec2 dg = problem.exact_grad(p) - uh.grad;
                const double w = rule.weights[q] * area;
                acc.l2 += w * du * du;
                acc.h1 += w * dot(dg, dg);
                acc.linf = std::max(acc.linf, std::abs(du));
            }
        };

        const double d0 = problem.interface.evaluate(a);
        const double d1 = problem.interface.evaluate(b);
        const double d2 = problem.interface.evaluate(c);
        const bool cut = std::min({d0, d1, d2}) < 0.0 && std::max({d0, d1, d2}) > 0.0;

        if (cut && cut_subdivision_depth > 0) {
            // uniform midpoint subdivision; the interpolant is evaluated
            // against the parent triangle throughout
            auto subdivide = [&](const auto& self, Vec2 qa, Vec2 qb, Vec2 qc, int depth) -> void {
                if (depth == 0) {
                    quad_cell(qa, qb, qc);
                    return;
                }
                const Vec2 mab = 0.5 * (qa + qb);
                const Vec2 mbc = 0.5 * (qb + qc);
                const Vec2 mca = 0.5 * (qc + qa);
                self(self, qa, mab, mca, depth - 1);
                self(self, mab, qb, mbc, depth - 1);
                self(self, mca, mbc, qc, depth - 1);
                self(self, mab, mbc, mca, depth - 1);
            };
            subdivide(subdivide, a, b, c, cut_subdivision_depth);
        } else {
            quad_cell(a, b, c);
        }

        sample_point(a);
        sample_point(b);
        sample_point(c);
        sample_point(0.5 * (a + b));
        sample_point(0.5 * (b + c));
        sample_point(0.5 * (c + a));

        l2_parts[t] = acc.l2;
        h1_parts[t] = acc.h1;
        linf_omega = std::max(linf_omega, acc.linf);
        if (solution.classification.element_class[t] != ElementClass::Layer)
            linf_outside = std::max(linf_outside, acc.linf);
    }

    report.l2 = std::sqrt(pairwise_sum(l2_parts));
    report.h1_semi = std::sqrt(pairwise_sum(h1_parts));
    report.h1_full = std::hypot(report.l2, report.h1_semi);
    report.linf_omega = linf_omega;
    report.linf_outside = linf_outside;
    report.h = h_max;
    return report;
}

double fit_rate_window(const ConvergenceTable& table, NormSelector norm, int first_row,
                       int row_count) {
    const int n = static_cast<int>(table.rows.size());
    if (first_row < 0 || row_count < 2 || first_row + row_count > n)
        throw std::invalid_argument("fit_rate_window: window must hold at least 2 rows");

    double sx = 0.0, sy = 0.0;
    std::vector<double> lx(row_count), ly(row_count);
    for (int i = 0; i < row_count; ++i) {
        const auto& [param, report] = table.rows[first_row + i];
        const double err = report_norm(report, norm);
        if (!(param > 0.0)) throw std::invalid_argument("fit_rate_window: non-positive parameter");
        if (!(err > 0.0)) throw std::invalid_argument("fit_rate_window: non-positive error");
        lx[i] = std::log(param);
        ly[i] = std::log(err);
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / row_count;
    const double my = sy / row_count;
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < row_count; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_rate_window: constant parameter");
    return sxy / sxx;
}

double fit_rate(const ConvergenceTable& table, NormSelector norm, int window_last_k) {
    const int n = static_cast<int>(table.rows.size());
    if (window_last_k > n) throw std::invalid_argument("fit_rate: window larger than table");
    return fit_rate_window(table, norm, n - window_last_k, window_last_k);
}

int presaturation_rows(const ConvergenceTable& table, NormSelector norm) {
    const int n = static_cast<int>(table.rows.size());
    for (int i = 1; i < n; ++i) {
        const double prev = report_norm(table.rows[i - 1].second, norm);
        const double cur = report_norm(table.rows[i].second, norm);
        if (!(prev > 0.0)) throw std::invalid_argument("presaturation_rows: non-positive error");
        if ((prev - cur) / prev < 0.10) return i;
    }
    return n;
}

int presaturation_rows_for_rate(const ConvergenceTable& table, NormSelector norm,
                                double reference_rate) {
    if (!(reference_rate > 0.0))
        throw std::invalid_argument("presaturation_rows_for_rate: rate must be positive");
    const int n = static_cast<int>(table.rows.size());
    for (int i = 1; i < n; ++i) {
        const double prev = report_norm(table.rows[i - 1].second, norm);
        const double cur = report_norm(table.rows[i].second, norm);
        if (!(prev > 0.0))
            throw std::invalid_argument("presaturation_rows_for_rate: non-positive error");
        const double p_prev = table.rows[i - 1].first;
        const double p_cur = table.rows[i].first;
        if (!(p_prev > 0.0 && p_cur > 0.0 && p_cur < p_prev))
            throw std::invalid_argument(
                "presaturation_rows_for_rate: parameters must be positive descending");
        const double ideal_drop = 1.0 - std::pow(p_cur / p_prev, reference_rate);
        if ((prev - cur) / prev < 0.5 * ideal_drop) return i;
    }
    return n;
}

}  // namespace ddm
