#include "mmopt/barrier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mmopt {

void BarrierProblem::require_interior(const Vec& x) const {
  if (x.size() != a.cols()) throw std::invalid_argument("starting point has the wrong dimension");
  if (a.rows() > 0 && (a * x - b).norm() > 1e-10) {
    throw std::invalid_argument("starting point violates the equality constraints");
  }
  for (const auto& v : constraints) {
    if (!(v.value(x) > 0.0)) throw std::invalid_argument("starting point is not strictly interior");
  }
}

BarrierProblem make_linear_program(Mat a, Vec b, Vec c, double rho) {
  if (a.rows() != b.size() || a.cols() != c.size()) {
    throw std::invalid_argument("LP data dimensions disagree");
  }
  if (!(rho > 0.0)) throw std::invalid_argument("barrier weight must be positive");
  const Eigen::Index n = c.size();
  BarrierProblem prob;
  prob.objective = {
      [c](const Vec& x) { return c.dot(x); },
      [c](const Vec&) -> Vec { return c; },
      [n](const Vec&) -> Mat { return Mat::Zero(n, n); },
  };
  prob.constraints.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    prob.constraints.push_back({
        [j](const Vec& x) { return x[j]; },
        [j, n](const Vec&) -> Vec { return Vec::Unit(n, j); },
        [n](const Vec&) -> Mat { return Mat::Zero(n, n); },
    });
  }
  prob.a = std::move(a);
  prob.b = std::move(b);
  prob.rho = rho;
  return prob;
}

BarrierProblem make_quadratic_program(Mat q, Vec c, Mat a, Vec b, Mat g, Vec h, double rho) {
  const Eigen::Index n = c.size();
  if (q.rows() != n || q.cols() != n || a.cols() != n || a.rows() != b.size() || g.cols() != n ||
      g.rows() != h.size()) {
    throw std::invalid_argument("QP data dimensions disagree");
  }
  require_symmetric(q, "quadratic term");
  if (!(rho > 0.0)) throw std::invalid_argument("barrier weight must be positive");
  BarrierProblem prob;
  prob.objective = {
      [q, c](const Vec& x) { return 0.5 * x.dot(q * x) + c.dot(x); },
      [q, c](const Vec& x) -> Vec { return q * x + c; },
      [q](const Vec&) -> Mat { return q; },
  };
  for (Eigen::Index j = 0; j < g.rows(); ++j) {
    const Vec row = g.row(j).transpose();
    const double hj = h[j];
    prob.constraints.push_back({
        [row, hj](const Vec& x) { return hj - row.dot(x); },
        [row](const Vec&) -> Vec { return -row; },
        [n](const Vec&) -> Mat { return Mat::Zero(n, n); },
    });
  }
  prob.a = std::move(a);
  prob.b = std::move(b);
  prob.rho = rho;
  return prob;
}

SurrogateDerivatives surrogate_derivatives(const BarrierProblem& prob, const Vec& x) {
  const SmoothFunction f = prob.quadratic_majorant ? prob.quadratic_majorant(x) : prob.objective;
  SurrogateDerivatives out{f.gradient(x), f.hessian(x)};
  for (const auto& v : prob.constraints) {
    const double value = v.value(x);
    if (!(value > 0.0)) throw std::invalid_argument("iterate left the interior of the feasible region");
    const Vec grad = v.gradient(x);
    out.hessian.noalias() -= prob.rho * v.hessian(x);
    out.hessian.noalias() += (prob.rho / value) * grad * grad.transpose();
  }
  return out;
}

Vec newton_direction(const BarrierProblem& prob, const Vec& x, const Vec& gradient, const Mat& hessian) {
  const Eigen::Index n = x.size();
  const Eigen::Index m = prob.a.rows();
  const Vec residual = m > 0 ? Vec(prob.b - prob.a * x) : Vec();

  Eigen::LLT<Mat> llt(hessian);
  if (llt.info() == Eigen::Success) {
    const Vec hg = llt.solve(gradient);
    if (m == 0) return -hg;
    const Mat ha = llt.solve(prob.a.transpose());
    const Mat schur = prob.a * ha;
    Eigen::LLT<Mat> schur_llt(schur);
    if (schur_llt.info() != Eigen::Success) {
      throw NumericalError("singular KKT system (equality rows dependent)");
    }
    const Vec lambda = schur_llt.solve(-prob.a * hg - residual);
    return -hg - ha * lambda;
  }

  // Hessian only positive definite on the null space of A: solve the full system.
  Mat kkt = Mat::Zero(n + m, n + m);
  kkt.topLeftCorner(n, n) = hessian;
  if (m > 0) {
    kkt.topRightCorner(n, m) = prob.a.transpose();
    kkt.bottomLeftCorner(m, n) = prob.a;
  }
  Vec rhs(n + m);
  rhs.head(n) = -gradient;
  if (m > 0) rhs.tail(m) = residual;
  Eigen::FullPivLU<Mat> lu(kkt);
  if (lu.rank() < n + m) throw NumericalError("singular KKT system");
  return lu.solve(rhs).head(n);
}

Vec lp_newton_direction(const Mat& a, const Vec& b, const Vec& c, const Vec& x, double rho) {
  if ((x.array() <= 0.0).any()) throw std::invalid_argument("LP iterate must be strictly positive");
  const Vec d_inv = x / rho;
  const Mat ad = a * d_inv.asDiagonal();
  const Mat gram = ad * a.transpose();
  Eigen::LLT<Mat> llt(gram);
  if (llt.info() != Eigen::Success) throw NumericalError("singular KKT system (A D^-1 A' not PD)");
  const Vec dc = d_inv.cwiseProduct(c);
  const Vec lambda = llt.solve(b - a * x + a * dc);
  return -dc + d_inv.cwiseProduct(a.transpose() * lambda);
}

double concordance_constant(const BarrierProblem& prob, const Vec& x) {
  if (prob.constraints.empty()) return 0.0;
  double min_v = std::numeric_limits<double>::infinity();
  for (const auto& v : prob.constraints) min_v = std::min(min_v, v.value(x));
  if (!(min_v > 0.0)) throw std::invalid_argument("constraint value must be positive");
  return 1.0 / std::sqrt(prob.rho * min_v);
}

double damped_step_length(double hp0, double hpp0, double c) {
  if (!(hpp0 > 0.0)) throw std::invalid_argument("h''(0) must be positive");
  if (hp0 > 0.0) throw std::invalid_argument("h'(0) must be nonpositive along a descent direction");
  if (c < 0.0) throw std::invalid_argument("self-concordance constant must be nonnegative");
  if (hp0 == 0.0) return 0.0;
  return -hp0 / (hpp0 - c * hp0 * std::sqrt(hpp0));
}

namespace {

double min_constraint_value(const BarrierProblem& prob, const Vec& x) {
  double out = std::numeric_limits<double>::infinity();
  for (const auto& v : prob.constraints) out = std::min(out, v.value(x));
  return out;
}

}  // namespace

BarrierResult barrier_solve(const BarrierProblem& prob, const Vec& x0, const BarrierOptions& options) {
  prob.require_interior(x0);
  if (!(prob.rho > 0.0)) throw std::invalid_argument("barrier weight must be positive");

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  BarrierResult result;
  result.x = x0;
  for (std::size_t n = 0; n < options.max_iter; ++n) {
    const auto deriv = surrogate_derivatives(prob, result.x);
    const Vec u = newton_direction(prob, result.x, deriv.gradient, deriv.hessian);

    double t = 1.0;
    if (options.safeguard) {
      const double hp = deriv.gradient.dot(u);
      const double hpp = u.dot(deriv.hessian * u);
      if (!(hpp > 0.0) || hp >= 0.0) {
        // Newton direction vanished: the surrogate is stationary at x_n.
        result.status = SolveStatus::converged;
        return result;
      }
      t = damped_step_length(hp, hpp, concordance_constant(prob, result.x));
    }

    const Vec next = result.x + t * u;
    if (!next.allFinite()) {
      result.status = SolveStatus::diverged;
      result.message = "non-finite iterate at step " + std::to_string(n + 1);
      return result;
    }
    const double min_v = min_constraint_value(prob, next);
    if (!(min_v > 0.0)) {
      result.status = SolveStatus::interior_violation;
      result.message = "step " + std::to_string(n + 1) + " leaves the interior (min v_j = " +
                       std::to_string(min_v) + ")";
      return result;
    }

    BarrierIterate rec;
    rec.iter = n + 1;
    rec.objective = prob.objective.value(next);
    rec.step_norm = (next - result.x).norm();
    rec.step_length = t;
    rec.min_constraint = min_v;
    rec.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    result.trace.push_back(rec);
    result.x = next;

    if (rec.step_norm <= options.tol_step) {
      result.status = SolveStatus::converged;
      return result;
    }
  }
  result.status = SolveStatus::max_iterations;
  return result;
}

}  // namespace mmopt
