#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "mmopt/linalg.hpp"
#include "mmopt/proxdist.hpp"

namespace mmopt {

/// Twice differentiable scalar function.
struct SmoothFunction {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
  std::function<Mat(const Vec&)> hessian;
};

/// minimize f(x) subject to A x = b and v_j(x) >= 0 with concave v_j.
///
/// The surrogate at x_n is
///   f(x) - rho sum_j v_j(x_n) ln v_j(x) + rho sum_j dv_j(x_n)(x - x_n).
struct BarrierProblem {
  SmoothFunction objective;
  std::vector<SmoothFunction> constraints;
  Mat a;  // may have zero rows
  Vec b;
  double rho = 1.0;

  /// Optional quadratic majorant of f anchored at x_n; when set its
  /// derivatives replace those of f in the Newton step.
  std::function<SmoothFunction(const Vec&)> quadratic_majorant;

  [[nodiscard]] std::size_t dimension() const { return static_cast<std::size_t>(a.cols()); }

  /// Throws std::invalid_argument unless A x = b (1e-10) and all v_j(x) > 0.
  void require_interior(const Vec& x) const;
};

/// Standard-form LP: minimize c'x subject to A x = b, x >= 0.
BarrierProblem make_linear_program(Mat a, Vec b, Vec c, double rho = 1.0);

/// minimize 1/2 x'Qx + c'x subject to A x = b, G x <= h.
BarrierProblem make_quadratic_program(Mat q, Vec c, Mat a, Vec b, Mat g, Vec h, double rho = 1.0);

struct SurrogateDerivatives {
  Vec gradient;
  Mat hessian;
};

/// Gradient and Hessian of the surrogate at its anchor x_n:
///   grad = grad f(x_n)
///   hess = d2f(x_n) - rho sum d2v_j(x_n) + rho sum v_j(x_n)^-1 grad v_j grad v_j'.
SurrogateDerivatives surrogate_derivatives(const BarrierProblem& prob, const Vec& x);

/// Minimizer u of the quadratic model subject to A(x + u) = b, from the KKT
/// system [H A'; A 0][u; lambda] = [-g; b - A x].
Vec newton_direction(const BarrierProblem& prob, const Vec& x, const Vec& gradient,
                     const Mat& hessian);

/// Closed-form LP step: x_{n+1} - x_n with D_n = diag(rho / x_n).
Vec lp_newton_direction(const Mat& a, const Vec& b, const Vec& c, const Vec& x, double rho);

/// 1 / sqrt(rho * min_j v_j(x)); exact for quadratic f with affine constraints.
double concordance_constant(const BarrierProblem& prob, const Vec& x);

/// Minimizer of the self-concordant majorization of h(t) = g(x_n + t u_n | x_n):
///   t = -h'(0) / (h''(0) - c h'(0) sqrt(h''(0))).
double damped_step_length(double hp0, double hpp0, double c);

struct BarrierOptions {
  std::size_t max_iter = 100;
  double tol_step = 1e-12;
  bool safeguard = true;
};

struct BarrierIterate {
  std::size_t iter = 0;
  double objective = 0.0;
  double step_norm = 0.0;    // ||x_n - x_{n-1}||
  double step_length = 1.0;  // t used to reach x_n
  double min_constraint = 0.0;
  double seconds = 0.0;
};

struct BarrierResult {
  Vec x;
  std::vector<BarrierIterate> trace;
  SolveStatus status = SolveStatus::max_iterations;
  std::string message;
};

BarrierResult barrier_solve(const BarrierProblem& prob, const Vec& x0, const BarrierOptions& options = {});

}  // namespace mmopt
