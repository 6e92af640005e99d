#include <gtest/gtest.h>

#include <sstream>
#include <vector>

#include "mmopt/bench.hpp"
#include "mmopt/problems.hpp"
#include "mmopt/proxdist.hpp"

using namespace mmopt;

namespace {

// f = 1/2 ||x - y||^2
ProxObjective half_squared(const Vec& y) {
  ProxObjective f;
  f.value = [y](const Vec& x) { return 0.5 * (x - y).squaredNorm(); };
  f.prox = [y](const Vec& anchor, double t) -> Vec { return (anchor + t * y) / (1.0 + t); };
  return f;
}

}  // namespace

TEST(PdStep, QuadraticAtOriginStaysAtOrigin) {
  const std::vector<ProjectableSet> sets{ProjectableSet::nonneg()};
  const Vec x = Vec::Constant(1, -1.0);
  const Vec next = pd_step(x, half_squared(Vec::Zero(1)), sets, 1.0, 1.0);
  EXPECT_EQ(next[0], 0.0);
}

TEST(PdStep, FixedPointIsKept) {
  const Vec y = Eigen::Vector2d(1.0, 2.0);
  const std::vector<ProjectableSet> sets{ProjectableSet::nonneg()};
  const Vec next = pd_step(y, half_squared(y), sets, 3.0, 0.1);
  EXPECT_LE((next - y).norm(), 1e-12);
}

TEST(PdStep, TableTwoFirstIterate) {
  const auto inst = bench::table2_instance();
  const auto f = smoothed_norm_objective(inst.y, inst.delta);
  const Vec x1 = pd_step(inst.y, f, inst.sets, 2.0, 1.0);
  EXPECT_NEAR(x1[0], -0.44024, 1e-3);
  EXPECT_NEAR(x1[1], 1.60145, 1e-3);
}

TEST(PdRun, FeasibleUnconstrainedOptimumIsFoundQuickly) {
  const Vec y = Eigen::Vector3d(1.0, 0.5, 2.0);
  const std::vector<ProjectableSet> sets{ProjectableSet::nonneg()};
  // Any rho > 0 is exact here, so a tiny rho lets the prox land on y at once.
  const auto res = pd_run(Vec::Zero(3), half_squared(y), sets, TuningSchedule::constant(1e-6, 1.0));
  EXPECT_EQ(res.status, SolveStatus::converged);
  EXPECT_LE(res.trace.size(), 5u);
  EXPECT_LE((res.x - y).norm(), 1e-8);
}

TEST(PdRun, TraceHasOneRecordPerIteration) {
  const auto inst = bench::table2_instance();
  PdOptions opts;
  opts.stop.max_iter = 35;
  opts.keep_iterates = true;
  const auto res = solve_intersection_projection(inst.y, inst.sets, inst.delta, bench::table2_schedule(), opts);
  ASSERT_EQ(res.trace.size(), 35u);
  EXPECT_EQ(res.iterates.size(), 36u);
  for (std::size_t i = 0; i < res.trace.size(); ++i) {
    const auto& r = res.trace.records[i];
    EXPECT_EQ(r.iter, i + 1);
    EXPECT_TRUE(std::isfinite(r.f) && std::isfinite(r.penalized_f) && std::isfinite(r.dist));
    EXPECT_DOUBLE_EQ(r.rho, 2.0);
    EXPECT_DOUBLE_EQ(r.eps, std::pow(4.0, -static_cast<double>(i)));
  }
  EXPECT_LE((res.x - Eigen::Vector2d(0, 1)).norm(), 1e-4);
}

TEST(PdRun, FrozenScheduleDescendsOnRandomNqp) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    bench::Rng rng(seed);
    const auto inst = bench::generate_nqp(6, rng);
    PdOptions opts;
    opts.stop.max_iter = 300;
    opts.check_descent = true;
    const auto res = solve_nqp(inst.a, inst.b, TuningSchedule::constant(2.0, 1e-3), false, opts);
    for (std::size_t i = 1; i < res.run.trace.size(); ++i) {
      EXPECT_LE(res.run.trace.records[i].penalized_f, res.run.trace.records[i - 1].penalized_f + 1e-10);
    }
  }
}

TEST(PdRun, DescentViolationThrows) {
  // A prox that ignores the objective breaks the MM guarantee.
  ProxObjective bad;
  bad.value = [](const Vec& x) { return x.squaredNorm(); };
  bad.prox = [](const Vec& anchor, double) -> Vec { return anchor + Vec::Constant(anchor.size(), 5.0); };
  const std::vector<ProjectableSet> sets{ProjectableSet::nonneg()};
  PdOptions opts;
  opts.check_descent = true;
  EXPECT_THROW(pd_run(Vec::Ones(2), bad, sets, TuningSchedule{}, opts), std::logic_error);
}

TEST(PdRun, NonFiniteIterateReportsDivergence) {
  ProxObjective nan_prox;
  nan_prox.value = [](const Vec& x) { return x.sum(); };
  nan_prox.prox = [](const Vec& anchor, double) -> Vec { return Vec::Constant(anchor.size(), std::nan("")); };
  const std::vector<ProjectableSet> sets{ProjectableSet::nonneg()};
  const auto res = pd_run(Vec::Ones(2), nan_prox, sets, TuningSchedule{});
  EXPECT_EQ(res.status, SolveStatus::diverged);
  EXPECT_FALSE(res.message.empty());
}

TEST(PdRun, RejectsBadInput) {
  const std::vector<ProjectableSet> none;
  EXPECT_THROW(pd_step(Vec::Ones(2), half_squared(Vec::Zero(2)), none, 1.0, 1.0), std::invalid_argument);
  const std::vector<ProjectableSet> sets{ProjectableSet::nonneg()};
  EXPECT_THROW(pd_step(Vec::Ones(2), half_squared(Vec::Zero(2)), sets, 0.0, 1.0), std::invalid_argument);
}

TEST(Majorization, ProjectionAnchorDominatesSmoothedDistance) {
  bench::Rng rng(21);
  const auto set = ProjectableSet::sparsity(2);
  const double eps = 0.01;
  for (int i = 0; i < 1000; ++i) {
    const Vec x = rng.normal_vector(5);
    const Vec xn = rng.normal_vector(5);
    const Vec p = set.project(xn);
    EXPECT_GE(std::sqrt((x - p).squaredNorm() + eps) + 1e-15, smoothed_distance(x, set, eps));
    EXPECT_NEAR(std::sqrt((xn - p).squaredNorm() + eps), smoothed_distance(xn, set, eps), 1e-15);
  }
}

TEST(Prox, SmoothedNormProxIsOptimalAgainstPerturbations) {
  bench::Rng rng(22);
  for (int i = 0; i < 50; ++i) {
    const Vec y = rng.normal_vector(3);
    const auto f = smoothed_norm_objective(y, 1.0);
    const Vec anchor = rng.normal_vector(3);
    const double t = 0.1 + rng.uniform();
    const Vec p = f.prox(anchor, t);
    const double best = f.value(p) + (p - anchor).squaredNorm() / (2 * t);
    for (int j = 0; j < 20; ++j) {
      const Vec z = p + 0.1 * rng.normal_vector(3);
      EXPECT_LE(best, f.value(z) + (z - anchor).squaredNorm() / (2 * t) + 1e-12);
    }
  }
}

TEST(TraceCsv, RoundTripsExactly) {
  SolveTrace t;
  t.records.push_back({1, -1.25, 0.5, 1.0 / 3.0, 2.0, 0.25, 0.1, 0.001});
  t.records.push_back({2, 3.0e-17, 1e300, 0.0, 2.0, 1e-15, 7.0, 0.002});
  std::stringstream s;
  t.write_csv(s);
  EXPECT_EQ(s.str().substr(0, s.str().find('\n')), "iter,f,penalized_f,dist,rho,eps,step_norm,seconds");
  const auto back = SolveTrace::read_csv(s);
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(back.records[i].iter, t.records[i].iter);
    EXPECT_EQ(back.records[i].f, t.records[i].f);
    EXPECT_EQ(back.records[i].dist, t.records[i].dist);
    EXPECT_EQ(back.records[i].eps, t.records[i].eps);
  }
  std::stringstream bad("iter,x\n");
  EXPECT_THROW(SolveTrace::read_csv(bad), std::invalid_argument);
}
