#include "mmopt/feasibility.hpp"

#include <cmath>
#include <stdexcept>

namespace mmopt {

namespace {

void check_weights(std::span<const ProjectableSet> sets, const Vec& weights) {
  if (sets.empty()) throw std::invalid_argument("at least one set is required");
  if (weights.size() != static_cast<Eigen::Index>(sets.size())) {
    throw std::invalid_argument("one weight per set is required");
  }
  if ((weights.array() < 0.0).any() || std::abs(weights.sum() - 1.0) > 1e-12) {
    throw std::invalid_argument("weights must be nonnegative and sum to one");
  }
}

Vec uniform_weights(std::size_t m) {
  return Vec::Constant(static_cast<Eigen::Index>(m), 1.0 / static_cast<double>(m));
}

}  // namespace

Vec averaged_projections_step(const Vec& x, std::span<const ProjectableSet> sets, const Vec& weights) {
  check_weights(sets, weights);
  Vec out = Vec::Zero(x.size());
  for (std::size_t j = 0; j < sets.size(); ++j) {
    out += weights[static_cast<Eigen::Index>(j)] * sets[j].project(x);
  }
  return out;
}

Vec averaged_projections_step(const Vec& x, std::span<const ProjectableSet> sets) {
  if (sets.empty()) throw std::invalid_argument("at least one set is required");
  return averaged_projections_step(x, sets, uniform_weights(sets.size()));
}

double averaged_objective(const Vec& x, std::span<const ProjectableSet> sets, const Vec& weights) {
  check_weights(sets, weights);
  double total = 0.0;
  for (std::size_t j = 0; j < sets.size(); ++j) {
    total += weights[static_cast<Eigen::Index>(j)] * (x - sets[j].project(x)).squaredNorm();
  }
  return total;
}

Vec alternating_projections_step(const Vec& x, const ProjectableSet& first,
                                 std::span<const ProjectableSet> others) {
  if (others.empty()) return first.project(x);
  Vec mean = Vec::Zero(x.size());
  for (const auto& s : others) mean += s.project(x);
  mean /= static_cast<double>(others.size());
  return first.project(mean);
}

namespace {

template <typename Step>
FeasibilityResult iterate_until_still(const Vec& x0, const FeasibilityOptions& options, Step step) {
  FeasibilityResult result;
  result.x = x0;
  for (std::size_t n = 0; n < options.max_iter; ++n) {
    Vec next = step(result.x);
    const double moved = (next - result.x).norm();
    result.x = std::move(next);
    result.iterations = n + 1;
    if (options.keep_iterates) result.iterates.push_back(result.x);
    if (!result.x.allFinite()) {
      result.status = SolveStatus::diverged;
      return result;
    }
    if (moved <= options.tol) {
      result.status = SolveStatus::converged;
      return result;
    }
  }
  result.status = SolveStatus::max_iterations;
  return result;
}

}  // namespace

FeasibilityResult run_averaged_projections(const Vec& x0, std::span<const ProjectableSet> sets,
                                           const Vec& weights, const FeasibilityOptions& options) {
  check_weights(sets, weights);
  return iterate_until_still(x0, options,
                             [&](const Vec& x) { return averaged_projections_step(x, sets, weights); });
}

FeasibilityResult run_alternating_projections(const Vec& x0, std::span<const ProjectableSet> sets,
                                              const FeasibilityOptions& options) {
  if (sets.empty()) throw std::invalid_argument("at least one set is required");
  const auto others = sets.subspan(1);
  return iterate_until_still(x0, options,
                             [&](const Vec& x) { return alternating_projections_step(x, sets[0], others); });
}

FeasibilityResult dykstra_project(const Vec& y, std::span<const ProjectableSet> sets,
                                  const FeasibilityOptions& options) {
  if (sets.empty()) throw std::invalid_argument("at least one set is required");
  std::vector<Vec> increments(sets.size(), Vec::Zero(y.size()));

  FeasibilityResult result;
  result.x = y;
  for (std::size_t cycle = 0; cycle < options.max_iter; ++cycle) {
    const Vec start = result.x;
    for (std::size_t j = 0; j < sets.size(); ++j) {
      const Vec shifted = result.x + increments[j];
      result.x = sets[j].project(shifted);
      increments[j] = shifted - result.x;
      if (options.keep_iterates) result.iterates.push_back(result.x);
    }
    result.iterations = cycle + 1;
    if (!result.x.allFinite()) {
      result.status = SolveStatus::diverged;
      return result;
    }
    if ((result.x - start).norm() <= options.tol) {
      result.status = SolveStatus::converged;
      return result;
    }
  }
  result.status = SolveStatus::max_iterations;
  return result;
}

}  // namespace mmopt
