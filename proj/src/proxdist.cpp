#include "mmopt/proxdist.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mmopt {

namespace {

constexpr const char* kTraceHeader = "iter,f,penalized_f,dist,rho,eps,step_norm,seconds";

}  // namespace

void SolveTrace::write_csv(std::ostream& out) const {
  out << kTraceHeader << '\n';
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  for (const auto& r : records) {
    out << r.iter << ',' << r.f << ',' << r.penalized_f << ',' << r.dist << ',' << r.rho << ','
        << r.eps << ',' << r.step_norm << ',' << r.seconds << '\n';
  }
  out.precision(old_precision);
}

SolveTrace SolveTrace::read_csv(std::istream& in) {
  SolveTrace trace;
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader) {
    throw std::invalid_argument("trace CSV header mismatch");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    TraceRecord r;
    char comma = 0;
    row >> r.iter >> comma >> r.f >> comma >> r.penalized_f >> comma >> r.dist >> comma >> r.rho >>
        comma >> r.eps >> comma >> r.step_norm >> comma >> r.seconds;
    if (!row) throw std::invalid_argument("malformed trace row: " + line);
    trace.records.push_back(r);
  }
  return trace;
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged:
      return "converged";
    case SolveStatus::max_iterations:
      return "max_iterations";
    case SolveStatus::diverged:
      return "diverged";
    case SolveStatus::interior_violation:
      return "interior_violation";
  }
  return "unknown";
}

double joint_distance(const Vec& x, std::span<const ProjectableSet> sets) {
  double total = 0.0;
  for (const auto& s : sets) total += (x - s.project(x)).squaredNorm();
  return std::sqrt(total);
}

double penalized_value(const ProxObjective& f, std::span<const ProjectableSet> sets, const Vec& x,
                       double rho, double eps) {
  const double d = joint_distance(x, sets);
  return f.value(x) + rho * std::sqrt(d * d + eps);
}

Vec pd_step(const Vec& x, const ProxObjective& f, std::span<const ProjectableSet> sets, double rho,
            double eps) {
  if (!(rho > 0.0) || !(eps > 0.0)) throw std::invalid_argument("rho and eps must be positive");
  if (sets.empty()) throw std::invalid_argument("proximal distance step needs at least one set");

  Vec mean = Vec::Zero(x.size());
  double total = 0.0;
  for (const auto& s : sets) {
    const Vec p = s.project(x);
    total += (x - p).squaredNorm();
    mean += p;
  }
  const auto m = static_cast<double>(sets.size());
  mean /= m;
  const double w = rho / std::sqrt(total + eps);
  const double step = 1.0 / (m * w);
  if (f.majorized_prox) return f.majorized_prox(mean, step, x);
  return f.prox(mean, step);
}

PdResult pd_run(const Vec& x0, const ProxObjective& f, std::span<const ProjectableSet> sets,
                const TuningSchedule& sched, const PdOptions& options) {
  sched.validate();
  if (options.stop.max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
  if (!x0.allFinite()) throw std::invalid_argument("starting point must be finite");

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  PdResult result;
  result.x = x0;
  if (options.keep_iterates) result.iterates.push_back(x0);

  for (std::size_t n = 0; n < options.stop.max_iter; ++n) {
    const auto [rho, eps] = schedule_at(sched, n);
    Vec next = pd_step(result.x, f, sets, rho, eps);

    if (!next.allFinite()) {
      result.status = SolveStatus::diverged;
      result.message = "non-finite iterate at step " + std::to_string(n + 1);
      return result;
    }

    TraceRecord rec;
    rec.iter = n + 1;
    rec.f = f.value(next);
    rec.dist = joint_distance(next, sets);
    rec.penalized_f = rec.f + rho * std::sqrt(rec.dist * rec.dist + eps);
    rec.rho = rho;
    rec.eps = eps;
    rec.step_norm = (next - result.x).norm();
    rec.seconds = std::chrono::duration<double>(Clock::now() - start).count();

    if (!std::isfinite(rec.penalized_f)) {
      result.status = SolveStatus::diverged;
      result.message = "non-finite objective at step " + std::to_string(n + 1);
      return result;
    }

    if (options.check_descent) {
      const double before = penalized_value(f, sets, result.x, rho, eps);
      if (rec.penalized_f > before + 1e-10 * std::max(1.0, std::abs(before))) {
        std::ostringstream msg;
        msg << std::setprecision(17) << "MM descent violated at step " << n + 1 << ": " << before
            << " -> " << rec.penalized_f;
        throw std::logic_error(msg.str());
      }
    }

    result.x = std::move(next);
    result.trace.records.push_back(rec);
    if (options.keep_iterates) result.iterates.push_back(result.x);

    if (rec.step_norm <= options.stop.tol_step && rec.dist <= options.stop.tol_feas) {
      result.status = SolveStatus::converged;
      return result;
    }
  }
  result.status = SolveStatus::max_iterations;
  return result;
}

}  // namespace mmopt
