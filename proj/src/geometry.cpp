#include "ddm/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace ddm {

double clamp_profile(double t) {
    if (t <= -1.0) return -1.0;
    if (t >= 1.0) return 1.0;
    return t;
}

double omega_eps(double d, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("omega_eps: eps must be positive");
    return 0.5 * (1.0 + clamp_profile(-d / eps));
}

double circle_signed_distance(Vec2 x) { return norm(x) - 1.0; }

LevelSet circle_level_set() {
    LevelSet ls;
    ls.evaluate = [](Vec2 x) { return circle_signed_distance(x); };
    ls.gradient = [](Vec2 x) -> Vec2 {
        const double r = norm(x);
        if (r == 0.0) throw std::domain_error("circle gradient: undefined at the center");
        return {x.x / r, x.y / r};
    };
    return ls;
}

double extend_constant_normal(const LevelSet& level_set,
                              const std::function<double(Vec2)>& surface_values, Vec2 x) {
    const double d = level_set.evaluate(x);
    const Vec2 n = level_set.gradient(x);
    if (!std::isfinite(n.x) || !std::isfinite(n.y))
        throw std::domain_error("extend_constant_normal: projection undefined at x");
    const Vec2 p = x - d * n;
    return surface_values(p);
}

namespace circle_problem {

double u_outer(Vec2 x) { return (4.0 - x.x * x.x) * (4.0 - x.y * x.y); }

double u_inner(Vec2 x) {
    const double r2 = x.x * x.x + x.y * x.y;
    return u_outer(x) * std::exp(1.0 - r2);
}

Vec2 grad_outer(Vec2 x) {
    return {-2.0 * x.x * (4.0 - x.y * x.y), -2.0 * x.y * (4.0 - x.x * x.x)};
}

Vec2 grad_inner(Vec2 x) {
    const double a = 4.0 - x.x * x.x;
    const double b = 4.0 - x.y * x.y;
    const double p = a * b;
    const double e = std::exp(1.0 - (x.x * x.x + x.y * x.y));
    return {-2.0 * x.x * (b + p) * e, -2.0 * x.y * (a + p) * e};
}

double source_outer(Vec2 x) {
    return 2.0 * (4.0 - x.x * x.x) + 2.0 * (4.0 - x.y * x.y);
}

double source_inner(Vec2 x) {
    const double x2 = x.x * x.x;
    const double y2 = x.y * x.y;
    const double a = 4.0 - x2;
    const double b = 4.0 - y2;
    const double p = a * b;
    const double r2 = x2 + y2;
    const double e = std::exp(1.0 - r2);
    return e * (2.0 * a + 2.0 * b + (4.0 - 4.0 * r2) * p - 8.0 * x2 * b - 8.0 * y2 * a);
}

double g(Vec2 x) {
    const double r2 = x.x * x.x + x.y * x.y;
    return (4.0 - x.x * x.x) * (4.0 - x.y * x.y) * std::cos(1.0 - r2);
}

}  // namespace circle_problem

TestProblem poisson_circle_problem() {
    TestProblem p;
    p.domain = {-2.0, 2.0, -2.0, 2.0};
    p.interface = circle_level_set();
    p.exact_u = [](Vec2 x) {
        return circle_signed_distance(x) < 0.0 ? circle_problem::u_inner(x)
                                                : circle_problem::u_outer(x);
    };
    p.exact_grad = [](Vec2 x) {
        return circle_signed_distance(x) < 0.0 ? circle_problem::grad_inner(x)
                                                : circle_problem::grad_outer(x);
    };
    p.boundary_extension_g = circle_problem::g;
    p.source_f = [](Vec2 x) {
        const double d = circle_signed_distance(x);
        if (d == 0.0) return 0.0;
        return d < 0.0 ? circle_problem::source_inner(x) : circle_problem::source_outer(x);
    };
    return p;
}

ExactEval evaluate_exact(const TestProblem& problem, Vec2 x) {
    if (!problem.domain.contains(x))
        throw std::domain_error("evaluate_exact: point outside the domain");
    return {problem.exact_u(x), problem.exact_grad(x)};
}

double evaluate_source(const TestProblem& problem, Vec2 x) {
    if (!problem.domain.contains(x))
        throw std::domain_error("evaluate_source: point outside the domain");
    return problem.source_f(x);
}

}  // namespace ddm
