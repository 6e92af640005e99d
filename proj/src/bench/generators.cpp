#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mmopt/bench.hpp"

namespace mmopt::bench {

namespace {

void require_positive(std::size_t value, const char* name) {
  if (value < 1) throw std::invalid_argument(std::string(name) + " must be at least 1");
}

}  // namespace

LpInstance lp_toy() {
  LpInstance lp;
  lp.a.resize(3, 6);
  lp.a << 2, 0, 0, 1, 0, 0,
          0, 2, 0, 0, 1, 0,
          0, 0, 2, 0, 0, 1;
  lp.b = Vec::Ones(3);
  lp.c.resize(6);
  lp.c << -1, -1, -1, 0, 0, 0;
  lp.x0 = Vec::Constant(6, 1.0 / 3.0);
  return lp;
}

IntersectionInstance table2_instance() {
  IntersectionInstance inst;
  inst.y = Eigen::Vector2d(-1.0, 2.0);
  inst.sets.push_back(ProjectableSet::ball(Vec::Zero(2), 1.0));
  inst.sets.push_back(ProjectableSet::halfspace(Eigen::Vector2d(1.0, 0.0), 0.0));
  inst.delta = 1.0;
  return inst;
}

TuningSchedule table2_schedule() {
  return {.rho0 = 2.0, .alpha = 1.0, .rho_max = 2.0, .eps0 = 1.0, .beta = 4.0, .eps_min = 1e-300};
}

IntersectionInstance random_ball_halfspace(Rng& rng, Eigen::Index dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be at least 1");
  IntersectionInstance inst;
  const Vec center = 0.5 * rng.normal_vector(dim);
  Vec normal = rng.normal_vector(dim);
  normal /= normal.norm();
  // The halfspace keeps the center plus a margin, so the intersection has interior.
  const double offset = normal.dot(center) - 0.5;
  inst.sets.push_back(ProjectableSet::ball(center, 1.0));
  inst.sets.push_back(ProjectableSet::halfspace(normal, offset));
  inst.y = center + 3.0 * rng.normal_vector(dim);
  inst.delta = 1.0;
  return inst;
}

BinaryPwlInstance generate_binary_pwl(std::size_t d, Rng& rng) {
  require_positive(d, "d");
  const auto n = static_cast<Eigen::Index>(d);
  BinaryPwlInstance inst;
  inst.b = rng.normal_vector(n) * static_cast<double>(d);
  inst.w = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      inst.w(i, j) = std::abs(rng.normal());
      inst.w(j, i) = inst.w(i, j);
    }
  }
  return inst;
}

NqpInstance generate_nqp(std::size_t d, Rng& rng) {
  require_positive(d, "d");
  const auto n = static_cast<Eigen::Index>(d);
  const Mat m = rng.normal_matrix(n, n);
  NqpInstance inst;
  inst.a = m.transpose() * m + Mat::Identity(n, n);
  inst.a = 0.5 * (inst.a + inst.a.transpose());
  inst.b = rng.normal_vector(n);
  return inst;
}

L0Instance generate_l0(std::size_t m, std::size_t n, Rng& rng) {
  require_positive(m, "m");
  require_positive(n, "n");
  L0Instance inst;
  inst.x = rng.normal_matrix(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  inst.beta = Vec::Zero(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < inst.beta.size() && i < 10; ++i) inst.beta[i] = 1.0 / static_cast<double>(i + 1);
  inst.y = inst.x * inst.beta + rng.normal_vector(static_cast<Eigen::Index>(m));
  return inst;
}

MatcompInstance generate_matcomp(std::size_t rows, std::size_t cols, std::size_t rank, double observed,
                                 Rng& rng) {
  require_positive(rows, "rows");
  require_positive(cols, "cols");
  require_positive(rank, "rank");
  if (!(observed > 0.0 && observed <= 1.0)) throw std::invalid_argument("observed fraction must lie in (0, 1]");
  const auto p = static_cast<Eigen::Index>(rows);
  const auto q = static_cast<Eigen::Index>(cols);
  const auto r = static_cast<Eigen::Index>(rank);

  MatcompInstance inst;
  inst.truth = rng.normal_matrix(p, r) * rng.normal_matrix(q, r).transpose();
  Mat y = Mat::Constant(p, q, std::numeric_limits<double>::quiet_NaN());
  bool any = false;
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = 0; j < q; ++j) {
      if (rng.uniform() < observed) {
        y(i, j) = inst.truth(i, j);
        any = true;
      }
    }
  }
  if (!any) y(0, 0) = inst.truth(0, 0);
  inst.problem = CompletionProblem::from_matrix(y, rank);
  return inst;
}

PrecisionInstance generate_precision(std::size_t p, Rng& rng) {
  require_positive(p, "p");
  const auto n = static_cast<Eigen::Index>(p);
  Mat l = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = std::max<Eigen::Index>(0, i - 3); j <= i; ++j) l(i, j) = rng.normal();
  }
  const Mat m = rng.normal_matrix(n, n);
  const Mat band = l * l.transpose();

  PrecisionInstance inst;
  inst.precision = band + 0.01 * m * m.transpose();
  inst.precision = 0.5 * (inst.precision + inst.precision.transpose());
  const auto eig = symmetric_eigen(inst.precision);
  if (!(eig.values[0] > 0.0)) throw NumericalError("generated precision matrix is singular");
  inst.s = eig.vectors * eig.values.cwiseInverse().asDiagonal() * eig.vectors.transpose();
  inst.s = 0.5 * (inst.s + inst.s.transpose());

  const double scale = band.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(band(i, j)) > 1e-12 * scale) ++inst.k;
    }
  }
  return inst;
}

}  // namespace mmopt::bench
