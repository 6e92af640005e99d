#include "mmopt/penalty.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mmopt {

void TuningSchedule::validate() const {
  if (!(rho0 > 0.0) || !(rho_max > 0.0)) throw std::invalid_argument("rho0 and rho_max must be positive");
  if (!(eps0 > 0.0) || !(eps_min > 0.0)) throw std::invalid_argument("eps0 and eps_min must be positive");
  if (!(alpha >= 1.0) || !(beta >= 1.0)) throw std::invalid_argument("alpha and beta must be at least 1");
}

TuningSchedule TuningSchedule::constant(double rho, double eps) {
  return {.rho0 = rho, .alpha = 1.0, .rho_max = rho, .eps0 = eps, .beta = 1.0, .eps_min = eps};
}

ScheduleValues schedule_at(const TuningSchedule& sched, std::size_t n) {
  const auto exponent = static_cast<double>(n);
  const double rho = std::min(std::pow(sched.alpha, exponent) * sched.rho0, sched.rho_max);
  const double eps = std::max(std::pow(sched.beta, -exponent) * sched.eps0, sched.eps_min);
  return {rho, eps};
}

double smoothed_distance(const Vec& x, const ProjectableSet& set, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("smoothing eps must be positive");
  const double d = set_distance(x, set);
  return std::sqrt(d * d + eps);
}

double proximal_weight(const Vec& x, std::span<const ProjectableSet> sets, double rho, double eps) {
  if (!(rho > 0.0) || !(eps > 0.0)) throw std::invalid_argument("rho and eps must be positive");
  if (sets.empty()) throw std::invalid_argument("proximal weight needs at least one set");
  double total = 0.0;
  for (const auto& s : sets) total += (x - s.project(x)).squaredNorm();
  return rho / std::sqrt(total + eps);
}

double lipschitz_bp(const Mat& weights, const Vec& b) {
  require_symmetric(weights, "weight matrix");
  if (weights.rows() != b.size()) throw std::invalid_argument("weight matrix and b differ in size");
  if ((weights.array() < 0.0).any()) throw std::invalid_argument("weights must be nonnegative");
  if ((weights.diagonal().array() != 0.0).any()) throw std::invalid_argument("weight diagonal must be zero");
  double total = 0.0;
  for (Eigen::Index i = 0; i < weights.rows(); ++i) total += weights.row(i).norm();
  return total + b.norm();
}

double lipschitz_nqp(const Mat& a, const Vec& b, bool precondition) {
  require_symmetric(a, "quadratic matrix");
  if (a.rows() != b.size()) throw std::invalid_argument("matrix and vector differ in size");
  Mat scaled = a;
  Vec rhs = b;
  if (precondition) {
    if ((a.diagonal().array() <= 0.0).any()) throw std::invalid_argument("matrix is not positive definite");
    const Vec inv_d = a.diagonal().cwiseSqrt().cwiseInverse();
    scaled = inv_d.asDiagonal() * a * inv_d.asDiagonal();
    rhs = inv_d.cwiseProduct(b);
  }
  const Vec ev = symmetric_eigen(scaled).values;
  if (!(ev[0] > 0.0)) throw std::invalid_argument("matrix is not positive definite");
  return (2.0 * ev[ev.size() - 1] / ev[0] + 1.0) * rhs.norm();
}

double lipschitz_mc(std::span<const double> observed) {
  if (observed.empty()) throw std::invalid_argument("no observed entries");
  double ss = 0.0;
  for (double y : observed) ss += y * y;
  return 3.0 * std::sqrt(ss);
}

namespace {

// Root of -t + a e^t = target on the side of t0 = -ln(a) given by `direction`
// (-1 for the smaller root, +1 for the larger), working in t = ln(lambda).
double solve_log_root(double a, double target, int direction) {
  auto phi = [&](double t) { return -t + a * std::exp(t) - target; };
  auto dphi = [&](double t) { return -1.0 + a * std::exp(t); };

  const double center = -std::log(a);
  double inner = center;  // phi(inner) <= 0
  double step = 1.0;
  double outer = center + direction * step;
  int expansions = 0;
  while (phi(outer) <= 0.0) {
    inner = outer;
    step *= 2.0;
    outer = center + direction * step;
    if (++expansions > 200 || !std::isfinite(phi(outer))) {
      throw NumericalError("precision eigenvalue bound: root bracketing failed");
    }
  }

  double t = 0.5 * (inner + outer);
  for (int it = 0; it < 500; ++it) {
    const double f = phi(t);
    if (std::abs(f) <= 1e-12) return t;
    if (f > 0.0) {
      outer = t;
    } else {
      inner = t;
    }
    const double lo = std::min(inner, outer);
    const double hi = std::max(inner, outer);
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) return t;
    const double slope = dphi(t);
    double next = slope != 0.0 ? t - f / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    t = next;
  }
  throw NumericalError("precision eigenvalue bound: root finder did not converge");
}

}  // namespace

PrecisionBound precision_lipschitz_bound(const Mat& s) {
  require_symmetric(s, "sample covariance");
  const Vec ascending = symmetric_eigen(s).values;
  if (!(ascending[0] > 0.0)) throw std::invalid_argument("sample covariance is not positive definite");

  const Eigen::Index p = s.rows();
  PrecisionBound out;
  out.omega = ascending.reverse();
  out.lambda_min.resize(p);
  out.lambda_max.resize(p);

  double sum_omega = 0.0;
  double sum_log_plus_one = 0.0;
  for (Eigen::Index j = 0; j < p; ++j) {
    sum_omega += ascending[j];
    sum_log_plus_one += std::log(ascending[j]) + 1.0;
  }
  // The gap between the threshold and the minimum of each slot function is
  // the same for every slot: sum(omega - ln omega - 1) >= 0.
  const double gap = sum_omega - sum_log_plus_one;

  double inv_sq = 0.0;
  for (Eigen::Index i = 0; i < p; ++i) {
    // slot i (0-based) pairs with the (i+1)-th smallest eigenvalue of S
    const double a = ascending[i];
    const double target = sum_omega - (sum_log_plus_one - (std::log(a) + 1.0));
    double lo, hi;
    if (gap <= 1e-13 * std::max(1.0, sum_omega)) {
      lo = hi = 1.0 / a;
    } else {
      lo = std::exp(solve_log_root(a, target, -1));
      hi = std::exp(solve_log_root(a, target, +1));
    }
    out.lambda_min[i] = lo;
    out.lambda_max[i] = hi;
    inv_sq += 1.0 / (lo * lo);
  }
  out.lipschitz = std::sqrt(inv_sq) + s.norm();
  return out;
}

double lipschitz_precision(const Mat& s) { return precision_lipschitz_bound(s).lipschitz; }

}  // namespace mmopt
