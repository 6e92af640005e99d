#include <cmath>
#include <limits>
#include <stdexcept>

#include "mmopt/problems.hpp"

namespace mmopt {

void PrecisionProblem::validate() const {
  require_symmetric(s, "sample covariance");
  if (s.rows() < 1) throw std::invalid_argument("sample covariance is empty");
  const auto p = static_cast<std::size_t>(s.rows());
  if (k > p * (p - 1) / 2) throw std::invalid_argument("edge budget exceeds the number of off-diagonal slots");
  if (!(symmetric_eigen(s).values[0] > 0.0)) {
    throw std::invalid_argument("sample covariance is not positive definite");
  }
}

Vec precision_eigen_update(const Vec& d, double w) {
  if (!(w > 0.0)) throw std::invalid_argument("weight must be positive");
  Vec e(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    const double root = std::sqrt(d[i] * d[i] + 4.0 * w);
    // Pick the form that avoids cancellation.
    e[i] = d[i] >= 0.0 ? 2.0 / (d[i] + root) : (root - d[i]) / (2.0 * w);
  }
  return e;
}

Mat precision_prox(const Mat& s, const Mat& anchor, double w) {
  const Mat shifted = s - w * anchor;
  const auto eig = symmetric_eigen(0.5 * (shifted + shifted.transpose()));
  const Vec e = precision_eigen_update(eig.values, w);
  const Mat theta = eig.vectors * e.asDiagonal() * eig.vectors.transpose();
  return 0.5 * (theta + theta.transpose());
}

Mat precision_step(const Mat& theta, const PrecisionProblem& prob, double w) {
  return precision_prox(prob.s, project_edge_sparsity(theta, prob.k), w);
}

double precision_objective(const Mat& theta, const Mat& s) {
  Eigen::LLT<Mat> llt(theta);
  if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
  const double log_det = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  return -log_det + s.cwiseProduct(theta).sum();
}

Mat precision_start(const Mat& s, bool* floored) {
  const auto eig = symmetric_eigen(s);
  const double top = eig.values[eig.values.size() - 1];
  if (!(top > 0.0)) throw std::invalid_argument("sample covariance is not positive definite");
  const double floor = 1e-8 * top;
  const Vec clipped = eig.values.cwiseMax(floor);
  if (floored) *floored = (eig.values.array() < floor).any();
  return eig.vectors * clipped.cwiseInverse().asDiagonal() * eig.vectors.transpose();
}

TuningSchedule precision_schedule(const Mat& s) {
  const double lipschitz = lipschitz_precision(s);
  return {.rho0 = std::min(1.0, lipschitz),
          .alpha = 1.2,
          .rho_max = lipschitz,
          .eps0 = 1.0,
          .beta = 1.2,
          .eps_min = 1e-15};
}

MatrixResult solve_precision(const PrecisionProblem& prob, const TuningSchedule& sched, const PdOptions& options,
                             std::optional<Mat> theta0) {
  prob.validate();
  const Eigen::Index p = prob.s.rows();

  bool floored = false;
  const Mat start = theta0 ? *theta0 : precision_start(prob.s, &floored);
  if (start.rows() != p || start.cols() != p) throw std::invalid_argument("starting matrix has the wrong size");

  ProxObjective f;
  f.value = [&prob, p](const Vec& v) { return precision_objective(v.reshaped(p, p), prob.s); };
  f.prox = [&prob, p](const Vec& anchor, double step) -> Vec {
    return precision_prox(prob.s, anchor.reshaped(p, p), 1.0 / step).reshaped();
  };

  const std::vector<ProjectableSet> sets{ProjectableSet::edge_sparsity(static_cast<std::size_t>(p), prob.k)};
  MatrixResult result;
  result.run = pd_run(start.reshaped(), f, sets, sched, options);
  if (floored && result.run.message.empty()) {
    result.run.message = "sample covariance nearly singular; starting eigenvalues were floored";
  }
  const Mat raw = result.run.x.reshaped(p, p);
  result.x = project_edge_sparsity(0.5 * (raw + raw.transpose()), prob.k);
  result.value = precision_objective(result.x, prob.s);
  return result;
}

}  // namespace mmopt
