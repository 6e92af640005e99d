#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mmopt/problems.hpp"

namespace mmopt {

double onedim_pwl_prox(std::span<const double> a, std::span<const double> c, double beta, double w,
                       double p) {
  if (a.size() != c.size()) throw std::invalid_argument("breakpoints and weights differ in length");
  if (!(w > 0.0)) throw std::invalid_argument("quadratic weight must be positive");

  std::vector<std::size_t> order(a.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a[i] < a[j]; });

  // Merge repeated breakpoints.
  std::vector<double> knots;
  std::vector<double> weights;
  double total = 0.0;
  for (std::size_t i : order) {
    if (c[i] < 0.0) throw std::invalid_argument("breakpoint weights must be nonnegative");
    total += c[i];
    if (!knots.empty() && knots.back() == a[i]) {
      weights.back() += c[i];
    } else {
      knots.push_back(a[i]);
      weights.push_back(c[i]);
    }
  }

  // The subgradient sum_i c_i sign(x - a_i) + beta + w (x - p) is increasing;
  // walk the pieces left to right until it crosses zero.
  double slope_sum = -total;  // sum of c_i sign(x - a_i) left of the current knot
  for (std::size_t j = 0; j <= knots.size(); ++j) {
    const double x = p - (beta + slope_sum) / w;
    const bool above_left = j == 0 || x > knots[j - 1];
    const bool below_right = j == knots.size() || x < knots[j];
    if (above_left && below_right) return x;
    if (j == knots.size()) break;
    const double base = beta + w * (knots[j] - p);
    if (slope_sum + base <= 0.0 && slope_sum + 2.0 * weights[j] + base >= 0.0) return knots[j];
    slope_sum += 2.0 * weights[j];
  }
  throw NumericalError("one-dimensional prox failed to bracket the minimizer");
}

namespace {

void check_pwl_data(const Mat& weights, const Vec& b) {
  require_symmetric(weights, "weight matrix");
  if (weights.rows() != b.size()) throw std::invalid_argument("weight matrix and b differ in size");
  if ((weights.array() < 0.0).any()) throw std::invalid_argument("weights must be nonnegative");
  if ((weights.diagonal().array() != 0.0).any()) throw std::invalid_argument("weight diagonal must be zero");
}

}  // namespace

double binary_pwl_value(const Mat& weights, const Vec& b, const Vec& x) {
  double total = b.dot(x);
  for (Eigen::Index j = 0; j < weights.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) total += weights(i, j) * std::abs(x[i] - x[j]);
  }
  return total;
}

ProxObjective binary_pwl_objective(const Mat& weights, const Vec& b) {
  check_pwl_data(weights, b);
  ProxObjective f;
  f.value = [weights, b](const Vec& x) { return binary_pwl_value(weights, b, x); };
  // |x_i - x_j| <= |x_i - m_ij| + |x_j - m_ij| with m_ij the current midpoint,
  // which separates the coordinates.
  f.majorized_prox = [weights, b](const Vec& anchor, double step, const Vec& current) -> Vec {
    const Eigen::Index d = b.size();
    Vec out(d);
    std::vector<double> knots;
    std::vector<double> coeffs;
    for (Eigen::Index i = 0; i < d; ++i) {
      knots.clear();
      coeffs.clear();
      for (Eigen::Index j = 0; j < d; ++j) {
        if (j == i || weights(i, j) == 0.0) continue;
        knots.push_back(0.5 * (current[i] + current[j]));
        coeffs.push_back(weights(i, j));
      }
      out[i] = onedim_pwl_prox(knots, coeffs, b[i], 1.0 / step, anchor[i]);
    }
    return out;
  };
  return f;
}

TuningSchedule binary_pwl_schedule(double lipschitz) {
  if (!(lipschitz > 0.0)) throw std::invalid_argument("Lipschitz constant must be positive");
  return {.rho0 = std::min(1.0, lipschitz),
          .alpha = 1.2,
          .rho_max = lipschitz,
          .eps0 = 1.0,
          .beta = 1.2,
          .eps_min = 1e-15};
}

BinaryPwlResult solve_binary_pwl(const Mat& weights, const Vec& b, const TuningSchedule& sched,
                                 std::size_t max_iter, std::optional<Vec> x0) {
  const ProxObjective f = binary_pwl_objective(weights, b);
  const std::vector<ProjectableSet> sets{ProjectableSet::hypercube_vertices()};
  PdOptions options;
  options.stop.max_iter = max_iter;
  const Vec start = x0 ? *x0 : Vec((b.array() < 0.0).cast<double>());
  if (start.size() != b.size()) throw std::invalid_argument("starting point has the wrong dimension");

  BinaryPwlResult result;
  result.run = pd_run(start, f, sets, sched, options);
  result.x = project_binary(result.run.x);
  result.value = binary_pwl_value(weights, b, result.x);
  return result;
}

}  // namespace mmopt
