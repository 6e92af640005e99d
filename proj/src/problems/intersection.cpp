#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mmopt/problems.hpp"

namespace mmopt {

double alpha_search(double d, double delta, double kw, double tol) {
  if (!(d > 0.0) || !(delta > 0.0) || !(kw > 0.0)) {
    throw std::invalid_argument("alpha_search needs d, delta, kw > 0");
  }
  const double d2 = d * d;
  auto hp = [&](double a) { return a * d2 / std::sqrt(a * a * d2 + delta) - kw * (1.0 - a) * d2; };
  // h'' = delta d^2 / (a^2 d^2 + delta)^{3/2} + kw d^2 > 0, so h' is increasing.
  auto hpp = [&](double a) {
    const double r = a * a * d2 + delta;
    return delta * d2 / (r * std::sqrt(r)) + kw * d2;
  };

  double lo = 0.0;
  double hi = 1.0;
  // Scaled so that small d still gets a relative answer.
  const double target = tol * std::min(1.0, d2);
  double a = kw / (1.0 + kw);
  for (int it = 0; it < 200; ++it) {
    const double g = hp(a);
    if (std::abs(g) <= target) break;
    if (g < 0.0) {
      lo = a;
    } else {
      hi = a;
    }
    if (hi - lo <= 1e-16) break;
    double next = a - g / hpp(a);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    a = next;
  }
  return a;
}

ProxObjective smoothed_norm_objective(const Vec& y, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  ProxObjective f;
  f.value = [y, delta](const Vec& x) { return std::sqrt((x - y).squaredNorm() + delta); };
  f.gradient = [y, delta](const Vec& x) -> Vec {
    return (x - y) / std::sqrt((x - y).squaredNorm() + delta);
  };
  // The minimizer lies on the segment from y to the anchor.
  f.prox = [y, delta](const Vec& anchor, double step) -> Vec {
    const double d = (y - anchor).norm();
    if (d == 0.0) return y;
    const double a = alpha_search(d, delta, 1.0 / step);
    return (1.0 - a) * y + a * anchor;
  };
  return f;
}

PdResult solve_intersection_projection(const Vec& y, std::span<const ProjectableSet> sets, double delta,
                                       const TuningSchedule& sched, const PdOptions& options) {
  return pd_run(y, smoothed_norm_objective(y, delta), sets, sched, options);
}

}  // namespace mmopt
