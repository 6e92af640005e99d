#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mmopt/linalg.hpp"
#include "mmopt/penalty.hpp"
#include "mmopt/proxdist.hpp"
#include "mmopt/sets.hpp"

namespace mmopt {

// ---------------------------------------------------------------------------
// Spectral cache

/// Eigendecomposition A = U diag(D) U' of a fixed symmetric matrix, kept so
/// that (A + wI)^{-1} r costs two matrix-vector products for any w.
class SpectralCache {
 public:
  static SpectralCache from_symmetric(const Mat& a);
  /// Cache for X'X built from the SVD of X, which avoids squaring the
  /// condition number. Missing singular values (rows < cols) are zeros.
  static SpectralCache from_design(const Mat& x);

  [[nodiscard]] const Vec& values() const { return values_; }  // ascending
  [[nodiscard]] const Mat& vectors() const { return vectors_; }
  [[nodiscard]] Eigen::Index dimension() const { return values_.size(); }

  /// (A + wI)^{-1} r; requires every D_i + w > 0.
  [[nodiscard]] Vec solve_shifted(const Vec& r, double w) const;
  [[nodiscard]] Mat reconstruct() const;

 private:
  Vec values_;
  Mat vectors_;
};

// ---------------------------------------------------------------------------
// Projection onto an intersection

/// Root in (0,1) of h'(a) = a d^2 / sqrt(a^2 d^2 + delta) - kw (1 - a) d^2.
double alpha_search(double d, double delta, double kw, double tol = 1e-13);

/// f(x) = sqrt(||x - y||^2 + delta) with its exact proximal map.
ProxObjective smoothed_norm_objective(const Vec& y, double delta);

PdResult solve_intersection_projection(const Vec& y, std::span<const ProjectableSet> sets, double delta,
                                       const TuningSchedule& sched, const PdOptions& options = {});

// ---------------------------------------------------------------------------
// Binary piecewise-linear minimization:
//   f(x) = sum_{i<j} w_ij |x_i - x_j| + b'x  over x in {0,1}^d

/// argmin_x sum_i c_i |x - a_i| + beta x + (w/2)(x - p)^2, exactly.
double onedim_pwl_prox(std::span<const double> a, std::span<const double> c, double beta, double w,
                       double p);

double binary_pwl_value(const Mat& weights, const Vec& b, const Vec& x);

/// Objective whose majorized_prox splits every |x_i - x_j| at the midpoint
/// of the current pair and updates all coordinates at once.
ProxObjective binary_pwl_objective(const Mat& weights, const Vec& b);

/// rho_n = min(1.2^n, L), eps_n = max(1.2^-n, 1e-15).
TuningSchedule binary_pwl_schedule(double lipschitz);

struct BinaryPwlResult {
  Vec x;  // rounded to {0,1}^d
  double value = 0.0;
  PdResult run;
};

/// Starts from the vertex minimizing b'x unless x0 is given; the final
/// iterate is rounded. The centre 1/2 would sit on every rounding tie.
BinaryPwlResult solve_binary_pwl(const Mat& weights, const Vec& b, const TuningSchedule& sched,
                                 std::size_t max_iter = 200, std::optional<Vec> x0 = std::nullopt);

// ---------------------------------------------------------------------------
// Quadratic problems sharing one update: x+ = (A + w I)^{-1} (w p - b)

struct QuadraticResult {
  Vec x;
  double value = 0.0;
  PdResult run;
};

/// rho_n = min(1.005^n, 0.1 L), eps_n = max(1.005^-n, 1e-15).
TuningSchedule nqp_schedule(double lipschitz);

/// Default stopping rule for the slow 1.005 schedules.
PdOptions quadratic_options();

/// minimize 1/2 x'Ax + b'x subject to x >= 0. With `precondition` the
/// problem is rescaled to unit diagonal, solved, and mapped back.
QuadraticResult solve_nqp(const Mat& a, const Vec& b, const TuningSchedule& sched, bool precondition,
                          const PdOptions& options = quadratic_options());

double nqp_value(const Mat& a, const Vec& b, const Vec& x);

/// Schedule for the l0 problem derived from the pair (X'X, -X'y).
TuningSchedule l0_schedule(const Mat& x, const Vec& y);

/// minimize 1/2 ||y - X beta||^2 subject to at most k nonzero coefficients.
/// `value` is the residual sum of squares over two.
QuadraticResult solve_l0(const Mat& x, const Vec& y, std::size_t k, const TuningSchedule& sched,
                         const PdOptions& options = quadratic_options());

// ---------------------------------------------------------------------------
// Matrix completion

struct CompletionProblem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t rank = 1;
  std::vector<std::pair<std::size_t, std::size_t>> indices;  // observed (i, j)
  std::vector<double> values;

  /// NaN entries are treated as unobserved.
  static CompletionProblem from_matrix(const Mat& y, std::size_t rank);

  void validate() const;
  /// P_Delta(Y) + P_Delta^perp(X)
  [[nodiscard]] Mat complete_with(const Mat& x) const;
  /// 1/2 sum over observed entries of (y - x)^2
  [[nodiscard]] double loss(const Mat& x) const;
  /// Observed entries, zeros elsewhere.
  [[nodiscard]] Mat zero_filled() const;
};

/// X+ = (Z + w P_{R_k}(X)) / (1 + w) with Z = complete_with(X).
Mat mc_step(const Mat& x, const CompletionProblem& prob, double w);

/// rho_n = min(1.005^n, L), eps_n = max(1.005^-n, 1e-15) with L = 3 ||P_Delta(Y)||.
TuningSchedule matcomp_schedule(const CompletionProblem& prob);

struct MatrixResult {
  Mat x;
  double value = 0.0;
  PdResult run;
};

MatrixResult solve_matcomp(const CompletionProblem& prob, const TuningSchedule& sched,
                           const PdOptions& options = quadratic_options());

// ---------------------------------------------------------------------------
// Sparse inverse covariance

struct PrecisionProblem {
  Mat s;              // sample covariance, symmetric positive definite
  std::size_t k = 0;  // allowed nonzero entries above the diagonal

  void validate() const;
};

/// Positive roots e_i of -1/e + w e + d_i = 0.
Vec precision_eigen_update(const Vec& d, double w);

/// Minimizer of -ln det T + tr(S T) + (w/2) ||T - anchor||_F^2.
Mat precision_prox(const Mat& s, const Mat& anchor, double w);

/// One update from Theta_n with anchor P_{T_k}(Theta_n).
Mat precision_step(const Mat& theta, const PrecisionProblem& prob, double w);

/// -ln det Theta + tr(S Theta); +inf off the positive definite cone.
double precision_objective(const Mat& theta, const Mat& s);

/// S^{-1}, with eigenvalues of S floored at 1e-8 lambda_max when S is
/// nearly singular. `floored` reports whether the floor was applied.
Mat precision_start(const Mat& s, bool* floored = nullptr);

/// rho_n = min(1.2^n, L), eps_n = max(1.2^-n, 1e-15) with L from the
/// eigenvalue bound on the sublevel set.
TuningSchedule precision_schedule(const Mat& s);

/// Returns P_{T_k}(Theta*) in `x`; run.x holds the raw final iterate.
MatrixResult solve_precision(const PrecisionProblem& prob, const TuningSchedule& sched,
                             const PdOptions& options = {}, std::optional<Mat> theta0 = std::nullopt);

}  // namespace mmopt
