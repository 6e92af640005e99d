#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mmopt/linalg.hpp"
#include "mmopt/proxdist.hpp"
#include "mmopt/sets.hpp"

namespace mmopt {

// Feasibility iterations built from projections, plus Dykstra's method for
// the projection of a point onto an intersection of convex sets.

/// sum_j alpha_j P_j(x). Weights must be nonnegative and sum to one.
Vec averaged_projections_step(const Vec& x, std::span<const ProjectableSet> sets, const Vec& weights);

/// Equal weights 1/m.
Vec averaged_projections_step(const Vec& x, std::span<const ProjectableSet> sets);

/// sum_j alpha_j dist(x, S_j)^2, the quantity the averaged step never increases.
double averaged_objective(const Vec& x, std::span<const ProjectableSet> sets, const Vec& weights);

/// P_{S1}(mean_j P_{S_j}(x)) over the sets in `others`.
Vec alternating_projections_step(const Vec& x, const ProjectableSet& first,
                                 std::span<const ProjectableSet> others);

struct FeasibilityOptions {
  std::size_t max_iter = 1000;
  double tol = 1e-10;  // stop once ||x_{n+1} - x_n|| <= tol
  bool keep_iterates = true;
};

struct FeasibilityResult {
  Vec x;
  std::vector<Vec> iterates;  // x_1, x_2, ...
  std::size_t iterations = 0;
  SolveStatus status = SolveStatus::max_iterations;
};

FeasibilityResult run_averaged_projections(const Vec& x0, std::span<const ProjectableSet> sets,
                                           const Vec& weights, const FeasibilityOptions& options = {});

/// The first set plays the role of S1; the rest are averaged.
FeasibilityResult run_alternating_projections(const Vec& x0, std::span<const ProjectableSet> sets,
                                              const FeasibilityOptions& options = {});

/// Dykstra's method with one correction increment per set, cycling through
/// the sets in the order given. `iterates` holds the point after every
/// single set projection, so a cycle over m sets contributes m entries.
/// max_iter counts full cycles; the run converges once a cycle moves the
/// point by at most tol.
FeasibilityResult dykstra_project(const Vec& y, std::span<const ProjectableSet> sets,
                                  const FeasibilityOptions& options = {});

}  // namespace mmopt
