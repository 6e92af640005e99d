#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mmopt/linalg.hpp"
#include "mmopt/penalty.hpp"
#include "mmopt/sets.hpp"

namespace mmopt {

/// Objective for the proximal distance method.
///
/// `prox(y, t)` returns argmin_x f(x) + ||x - y||^2 / (2t). When f is itself
/// handled through a majorization (the binary piecewise-linear and matrix
/// completion problems), `majorized_prox(y, t, current)` returns the same
/// minimizer for a surrogate of f anchored at the current iterate, and takes
/// precedence over `prox`.
struct ProxObjective {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec& anchor, double step)> prox;
  std::function<Vec(const Vec&)> gradient;  // optional
  std::function<Vec(const Vec& anchor, double step, const Vec& current)> majorized_prox;
};

/// One row per completed iteration.
struct TraceRecord {
  std::size_t iter = 0;
  double f = 0.0;
  double penalized_f = 0.0;  // f + rho * dist_eps at the new iterate
  double dist = 0.0;         // sqrt(sum_j dist(x, S_j)^2)
  double rho = 0.0;
  double eps = 0.0;
  double step_norm = 0.0;
  double seconds = 0.0;
};

struct SolveTrace {
  std::vector<TraceRecord> records;

  [[nodiscard]] std::size_t size() const { return records.size(); }
  [[nodiscard]] bool empty() const { return records.empty(); }
  [[nodiscard]] const TraceRecord& back() const { return records.back(); }

  /// Columns: iter,f,penalized_f,dist,rho,eps,step_norm,seconds
  void write_csv(std::ostream& out) const;
  static SolveTrace read_csv(std::istream& in);
};

enum class SolveStatus {
  converged,
  max_iterations,
  diverged,
  interior_violation,
};

std::string to_string(SolveStatus status);

struct StopRule {
  std::size_t max_iter = 1000;
  double tol_step = 1e-8;
  double tol_feas = 1e-8;
};

struct PdOptions {
  StopRule stop;
#ifdef NDEBUG
  bool check_descent = false;
#else
  bool check_descent = true;
#endif
  bool keep_iterates = false;
};

struct PdResult {
  Vec x;
  SolveTrace trace;
  SolveStatus status = SolveStatus::max_iterations;
  std::string message;
  std::vector<Vec> iterates;  // x_0, x_1, ... when keep_iterates is set
};

/// sqrt(sum_j dist(x, S_j)^2)
double joint_distance(const Vec& x, std::span<const ProjectableSet> sets);

/// f(x) + rho * sqrt(sum_j dist(x, S_j)^2 + eps)
double penalized_value(const ProxObjective& f, std::span<const ProjectableSet> sets, const Vec& x,
                       double rho, double eps);

/// One proximal distance update. With m sets it minimizes
/// f(x) + (m w / 2) ||x - mean_j P_j(x_n)||^2, w = proximal_weight(x_n).
Vec pd_step(const Vec& x, const ProxObjective& f, std::span<const ProjectableSet> sets, double rho,
            double eps);

/// Iterates pd_step with (rho_n, eps_n) = schedule_at(sched, n) for the step
/// that produces x_{n+1}. Stops once the step and the constraint distance are
/// both within tolerance, at max_iter, or on a non-finite iterate.
///
/// With check_descent set, every step is checked against the MM guarantee
/// F(x_{n+1}) <= F(x_n) at the step's own (rho_n, eps_n); a violation throws
/// std::logic_error.
PdResult pd_run(const Vec& x0, const ProxObjective& f, std::span<const ProjectableSet> sets,
                const TuningSchedule& sched, const PdOptions& options = {});

}  // namespace mmopt
