#include <cmath>
#include <set>
#include <stdexcept>

#include "mmopt/problems.hpp"

namespace mmopt {

CompletionProblem CompletionProblem::from_matrix(const Mat& y, std::size_t rank) {
  CompletionProblem prob;
  prob.rows = static_cast<std::size_t>(y.rows());
  prob.cols = static_cast<std::size_t>(y.cols());
  prob.rank = rank;
  for (Eigen::Index j = 0; j < y.cols(); ++j) {
    for (Eigen::Index i = 0; i < y.rows(); ++i) {
      if (std::isnan(y(i, j))) continue;
      prob.indices.emplace_back(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      prob.values.push_back(y(i, j));
    }
  }
  prob.validate();
  return prob;
}

void CompletionProblem::validate() const {
  if (rows < 1 || cols < 1) throw std::invalid_argument("matrix dimensions must be positive");
  if (rank < 1) throw std::invalid_argument("target rank must be at least 1");
  if (indices.empty()) throw std::invalid_argument("no observed entries");
  if (indices.size() != values.size()) throw std::invalid_argument("indices and values differ in length");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& ij : indices) {
    if (ij.first >= rows || ij.second >= cols) throw std::invalid_argument("observed index out of range");
    if (!seen.insert(ij).second) throw std::invalid_argument("observed index repeated");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("observed values must be finite");
  }
}

Mat CompletionProblem::complete_with(const Mat& x) const {
  Mat z = x;
  for (std::size_t e = 0; e < indices.size(); ++e) {
    z(static_cast<Eigen::Index>(indices[e].first), static_cast<Eigen::Index>(indices[e].second)) = values[e];
  }
  return z;
}

double CompletionProblem::loss(const Mat& x) const {
  double total = 0.0;
  for (std::size_t e = 0; e < indices.size(); ++e) {
    const double r =
        values[e] - x(static_cast<Eigen::Index>(indices[e].first), static_cast<Eigen::Index>(indices[e].second));
    total += r * r;
  }
  return 0.5 * total;
}

Mat CompletionProblem::zero_filled() const {
  return complete_with(Mat::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)));
}

Mat mc_step(const Mat& x, const CompletionProblem& prob, double w) {
  if (!(w > 0.0)) throw std::invalid_argument("weight must be positive");
  return (prob.complete_with(x) + w * project_rank(x, prob.rank)) / (1.0 + w);
}

TuningSchedule matcomp_schedule(const CompletionProblem& prob) {
  const double lipschitz = lipschitz_mc(prob.values);
  // The 1.2 factors stall on a rank-k point well above the optimal loss.
  return {.rho0 = std::min(1.0, lipschitz),
          .alpha = 1.005,
          .rho_max = lipschitz,
          .eps0 = 1.0,
          .beta = 1.005,
          .eps_min = 1e-15};
}

MatrixResult solve_matcomp(const CompletionProblem& prob, const TuningSchedule& sched,
                           const PdOptions& options) {
  prob.validate();
  const auto rows = static_cast<Eigen::Index>(prob.rows);
  const auto cols = static_cast<Eigen::Index>(prob.cols);

  ProxObjective f;
  f.value = [&prob, rows, cols](const Vec& v) { return prob.loss(v.reshaped(rows, cols)); };
  // Surrogate 1/2 ||Z_n - X||^2 fills the missing entries from the current iterate.
  f.majorized_prox = [&prob, rows, cols](const Vec& anchor, double step, const Vec& current) -> Vec {
    const Mat z = prob.complete_with(current.reshaped(rows, cols));
    return (step * z.reshaped() + anchor) / (1.0 + step);
  };

  const std::vector<ProjectableSet> sets{ProjectableSet::rank(prob.rows, prob.cols, prob.rank)};
  MatrixResult result;
  const Vec x0 = prob.zero_filled().reshaped();
  result.run = pd_run(x0, f, sets, sched, options);
  result.x = result.run.x.reshaped(rows, cols);
  result.value = prob.loss(result.x);
  return result;
}

}  // namespace mmopt
