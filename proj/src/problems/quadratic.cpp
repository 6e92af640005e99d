#include <algorithm>
#include <stdexcept>

#include "mmopt/problems.hpp"

namespace mmopt {

namespace {

// f(x) = 1/2 x'Ax + b'x + constant, with prox (A + I/t)^{-1}(p/t - b).
ProxObjective cached_quadratic(const SpectralCache& cache, Mat a, Vec b, double constant) {
  ProxObjective f;
  f.value = [a, b, constant](const Vec& x) { return 0.5 * x.dot(a * x) + b.dot(x) + constant; };
  f.gradient = [a, b](const Vec& x) -> Vec { return a * x + b; };
  f.prox = [cache, b](const Vec& anchor, double step) -> Vec {
    const double w = 1.0 / step;
    return cache.solve_shifted(w * anchor - b, w);
  };
  return f;
}

}  // namespace

TuningSchedule nqp_schedule(double lipschitz) {
  if (!(lipschitz > 0.0)) throw std::invalid_argument("Lipschitz constant must be positive");
  const double cap = 0.1 * lipschitz;
  return {.rho0 = std::min(1.0, cap), .alpha = 1.005, .rho_max = cap, .eps0 = 1.0, .beta = 1.005, .eps_min = 1e-15};
}

PdOptions quadratic_options() {
  PdOptions options;
  options.stop.max_iter = 10000;
  return options;
}

double nqp_value(const Mat& a, const Vec& b, const Vec& x) { return 0.5 * x.dot(a * x) + b.dot(x); }

QuadraticResult solve_nqp(const Mat& a, const Vec& b, const TuningSchedule& sched, bool precondition,
                          const PdOptions& options) {
  require_symmetric(a, "quadratic matrix");
  if (a.rows() != b.size()) throw std::invalid_argument("matrix and vector differ in size");

  Vec scale = Vec::Ones(b.size());
  if (precondition) {
    if ((a.diagonal().array() <= 0.0).any()) throw std::invalid_argument("matrix is not positive definite");
    scale = a.diagonal().cwiseSqrt().cwiseInverse();
  }
  const Mat scaled = scale.asDiagonal() * a * scale.asDiagonal();
  const Vec scaled_b = scale.cwiseProduct(b);
  const SpectralCache cache = SpectralCache::from_symmetric(scaled);
  if (!(cache.values()[0] > 0.0)) throw std::invalid_argument("matrix is not positive definite");

  const std::vector<ProjectableSet> sets{ProjectableSet::nonneg()};
  QuadraticResult result;
  result.run = pd_run(Vec::Zero(b.size()), cached_quadratic(cache, scaled, scaled_b, 0.0), sets, sched, options);
  // A positive diagonal rescaling maps the orthant onto itself.
  result.x = scale.cwiseProduct(project_nonneg(result.run.x));
  result.value = nqp_value(a, b, result.x);
  return result;
}

TuningSchedule l0_schedule(const Mat& x, const Vec& y) {
  if (x.rows() != y.size()) throw std::invalid_argument("design and response differ in length");
  const Mat gram = x.transpose() * x;
  const Vec ev = SpectralCache::from_design(x).values();
  if (!(ev[0] > 0.0)) {
    throw std::invalid_argument("X'X is singular; the l0 schedule needs an explicit rho_max");
  }
  return nqp_schedule(lipschitz_nqp(gram, -x.transpose() * y, false));
}

QuadraticResult solve_l0(const Mat& x, const Vec& y, std::size_t k, const TuningSchedule& sched,
                         const PdOptions& options) {
  if (x.rows() != y.size()) throw std::invalid_argument("design and response differ in length");
  if (k < 1) throw std::invalid_argument("sparsity level must be at least 1");
  const SpectralCache cache = SpectralCache::from_design(x);
  const Mat gram = x.transpose() * x;
  const Vec lin = -x.transpose() * y;

  const std::vector<ProjectableSet> sets{ProjectableSet::sparsity(k)};
  QuadraticResult result;
  result.run = pd_run(Vec::Zero(x.cols()), cached_quadratic(cache, gram, lin, 0.5 * y.squaredNorm()), sets,
                      sched, options);
  result.x = project_sparsity(result.run.x, k);
  result.value = 0.5 * (y - x * result.x).squaredNorm();
  return result;
}

}  // namespace mmopt
