#pragma once

#include <cmath>
#include <functional>

namespace ddm {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Axis-aligned rectangle; the computational domain is square(-2, 2).
struct Rect {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
    bool contains(Vec2 p) const {
        return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
    }
};

/// Signed-distance description of a closed interface. evaluate() is negative
/// inside the enclosed region and positive outside; gradient() is the unit
/// outward normal field, defined away from the medial axis.
struct LevelSet {
    std::function<double(Vec2)> evaluate;
    std::function<Vec2(Vec2)> gradient;
};

/// Profile S with S(t)=t for |t|<1 and S(t)=sign(t) otherwise.
double clamp_profile(double t);

/// Regularized indicator of the enclosed region, (1 + S(-d/eps)) / 2.
/// Throws std::invalid_argument for eps <= 0.
double omega_eps(double d, double eps);

/// Signed distance to the unit circle, |x| - 1.
double circle_signed_distance(Vec2 x);

/// Level set of the unit circle centered at the origin.
LevelSet circle_level_set();

/// Pulls a surface field back along the normal direction: returns
/// surface_values at the closest interface point x - d(x) * grad d(x).
/// Throws std::domain_error where the projection is undefined.
double extend_constant_normal(const LevelSet& level_set,
                              const std::function<double(Vec2)>& surface_values,
                              Vec2 x);

/// Poisson test problem with an exact piecewise solution. The scalar fields
/// select the branch from the sign of the interface distance; on the
/// interface itself the outer branch is used.
struct TestProblem {
    Rect domain;
    LevelSet interface;
    std::function<double(Vec2)> exact_u;
    std::function<Vec2(Vec2)> exact_grad;
    std::function<double(Vec2)> boundary_extension_g;
    std::function<double(Vec2)> source_f;
};

struct ExactEval {
    double u = 0.0;
    Vec2 grad;
};

/// Evaluates the exact solution and its one-sided gradient.
/// Throws std::domain_error for x outside the closed domain.
ExactEval evaluate_exact(const TestProblem& problem, Vec2 x);

/// Evaluates the manufactured source -laplacian(u); exactly zero on the
/// interface.
double evaluate_source(const TestProblem& problem, Vec2 x);

/// Closed-form branches of the circle test problem on (-2,2)^2:
///   u = (4-x1^2)(4-x2^2)            outside the unit disc,
///   u = (4-x1^2)(4-x2^2) e^(1-|x|^2) inside,
///   g = (4-x1^2)(4-x2^2) cos(1-|x|^2).
namespace circle_problem {
double u_inner(Vec2 x);
double u_outer(Vec2 x);
Vec2 grad_inner(Vec2 x);
Vec2 grad_outer(Vec2 x);
double source_inner(Vec2 x);
double source_outer(Vec2 x);
double g(Vec2 x);
}  // namespace circle_problem

/// The assembled test problem used by the experiments.
TestProblem poisson_circle_problem();

}  // namespace ddm
