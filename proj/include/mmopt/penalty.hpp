#pragma once

#include <cstddef>
#include <span>

#include "mmopt/linalg.hpp"
#include "mmopt/sets.hpp"

namespace mmopt {

/// Geometric penalty ascent and smoothing descent:
///   rho_n = min(alpha^n rho0, rho_max),  eps_n = max(beta^-n eps0, eps_min).
/// alpha = beta = 1 freezes both sequences.
struct TuningSchedule {
  double rho0 = 1.0;
  double alpha = 1.2;
  double rho_max = 1.0;
  double eps0 = 1.0;
  double beta = 1.2;
  double eps_min = 1e-15;

  /// Throws std::invalid_argument on nonpositive values or a factor below 1.
  void validate() const;

  [[nodiscard]] bool frozen() const { return alpha == 1.0 && beta == 1.0; }

  /// Constant (rho, eps) for every iteration.
  static TuningSchedule constant(double rho, double eps);
};

struct ScheduleValues {
  double rho;
  double eps;
};

ScheduleValues schedule_at(const TuningSchedule& sched, std::size_t n);

/// Penalty quantities in force for a single MM iteration.
struct PenaltyState {
  double rho;
  double eps;
  double w;
};

/// sqrt(dist(x, S)^2 + eps)
double smoothed_distance(const Vec& x, const ProjectableSet& set, double eps);

/// rho / sqrt(sum_j dist(x, S_j)^2 + eps)
double proximal_weight(const Vec& x, std::span<const ProjectableSet> sets, double rho, double eps);

// Local Lipschitz constants used to cap rho.

/// sum_i sqrt(sum_{j != i} w_ij^2) + ||b|| for the binary piecewise-linear objective.
double lipschitz_bp(const Mat& weights, const Vec& b);

/// (2 lambda_max / lambda_min + 1) ||b|| for 1/2 x'Ax + b'x. With `precondition`
/// the bound is taken for the correlation-rescaled pair (D^-1 A D^-1, D^-1 b),
/// D = sqrt(diag A).
double lipschitz_nqp(const Mat& a, const Vec& b, bool precondition);

/// 3 * sqrt(sum of squared observed entries).
double lipschitz_mc(std::span<const double> observed);

struct PrecisionBound {
  double lipschitz = 0.0;
  Vec lambda_min;  ///< smaller root per eigenvalue slot
  Vec lambda_max;  ///< larger root per eigenvalue slot
  Vec omega;       ///< eigenvalues of S, largest first
};

/// Eigenvalue window for the sparse precision problem and the resulting
/// gradient bound sqrt(sum lambda_min^-2) + ||S||_F. For slot i the two roots
/// solve -ln(l) + l * omega_{p-i+1} = sum(omega) - sum_{j != i}(ln omega_{p-j+1} + 1).
PrecisionBound precision_lipschitz_bound(const Mat& s);

double lipschitz_precision(const Mat& s);

}  // namespace mmopt
