#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "mmopt/bench.hpp"
#include "mmopt/penalty.hpp"
#include "mmopt/problems.hpp"

using namespace mmopt;

TEST(Schedule, ExamplesAndCap) {
  const TuningSchedule s{.rho0 = 1, .alpha = 1.2, .rho_max = 5, .eps0 = 1, .beta = 1.2, .eps_min = 1e-15};
  EXPECT_DOUBLE_EQ(schedule_at(s, 1).rho, 1.2);
  EXPECT_DOUBLE_EQ(schedule_at(s, 10).rho, 5.0);
  const TuningSchedule t{.rho0 = 1, .alpha = 1, .rho_max = 1, .eps0 = 1, .beta = 4, .eps_min = 1e-15};
  EXPECT_DOUBLE_EQ(schedule_at(t, 3).eps, 0.015625);
  EXPECT_DOUBLE_EQ(schedule_at(t, 100).eps, 1e-15);
}

TEST(Schedule, MonotoneForRandomParameters) {
  bench::Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const TuningSchedule s{.rho0 = 0.1 + rng.uniform(),
                           .alpha = 1.0 + rng.uniform(),
                           .rho_max = 1.0 + 10 * rng.uniform(),
                           .eps0 = 0.1 + rng.uniform(),
                           .beta = 1.0 + rng.uniform(),
                           .eps_min = 1e-15};
    s.validate();
    for (std::size_t n = 0; n < 100; ++n) {
      const auto a = schedule_at(s, n);
      const auto b = schedule_at(s, n + 1);
      EXPECT_LE(a.rho, b.rho);
      EXPECT_GE(a.eps, b.eps);
      EXPECT_GT(b.eps, 0.0);
    }
  }
}

TEST(Schedule, RejectsInvalid) {
  EXPECT_THROW((TuningSchedule{.rho0 = 0}).validate(), std::invalid_argument);
  EXPECT_THROW((TuningSchedule{.alpha = 0.9}).validate(), std::invalid_argument);
  EXPECT_THROW((TuningSchedule{.eps_min = 0}).validate(), std::invalid_argument);
  EXPECT_TRUE(TuningSchedule::constant(2, 1).frozen());
}

TEST(SmoothedDistance, Examples) {
  const auto ball = ProjectableSet::ball(Vec::Zero(2), 1.0);
  EXPECT_DOUBLE_EQ(smoothed_distance(Eigen::Vector2d(0.1, 0.1), ball, 1.0), 1.0);
  const double d = std::sqrt(5.0) - 1.0;
  EXPECT_NEAR(smoothed_distance(Eigen::Vector2d(-1, 2), ball, 0.25), std::sqrt(d * d + 0.25), 1e-15);
  EXPECT_NEAR(smoothed_distance(Eigen::Vector2d(-1, 2), ball, 0.25), 1.33337, 1e-5);
  EXPECT_NEAR(smoothed_distance(Eigen::Vector2d(-1, 2), ball, 1e-15), d, 1e-7);
}

TEST(SmoothedDistance, BoundedGapAboveDistance) {
  bench::Rng rng(6);
  const auto set = ProjectableSet::sparsity(2);
  for (int i = 0; i < 1000; ++i) {
    const Vec x = rng.normal_vector(5);
    const double eps = std::pow(10.0, -6.0 * rng.uniform());
    const double d = set_distance(x, set);
    const double s = smoothed_distance(x, set, eps);
    EXPECT_GE(s, d);
    EXPECT_LE(s - d, std::sqrt(eps) + 1e-15);
  }
}

TEST(ProximalWeight, Examples) {
  const std::vector<ProjectableSet> sets{ProjectableSet::nonneg(), ProjectableSet::ball(Vec::Zero(2), 5)};
  EXPECT_DOUBLE_EQ(proximal_weight(Eigen::Vector2d(1, 1), sets, 2.0, 1.0), 2.0);
  const std::vector<ProjectableSet> one{ProjectableSet::nonneg()};
  // squared distance 3
  const Vec x = Eigen::Vector3d(-1, -1, -1);
  EXPECT_DOUBLE_EQ(proximal_weight(x, one, 1.0, 1.0), 0.5);
}

TEST(LipschitzBp, FormulaAndDominance) {
  Mat w = Mat::Zero(2, 2);
  w(0, 1) = w(1, 0) = 1;
  EXPECT_NEAR(lipschitz_bp(w, Eigen::Vector2d(-3, 0.5)), 2 + std::sqrt(9.25), 1e-14);
  EXPECT_EQ(lipschitz_bp(Mat::Zero(3, 3), Vec::Zero(3)), 0.0);

  bench::Rng rng(7);
  const auto inst = bench::generate_binary_pwl(4, rng);
  const double lip = lipschitz_bp(inst.w, inst.b);
  for (int i = 0; i < 1000; ++i) {
    const Vec x = 2.0 * rng.normal_vector(4);
    const Vec y = 2.0 * rng.normal_vector(4);
    const double q = std::abs(binary_pwl_value(inst.w, inst.b, x) - binary_pwl_value(inst.w, inst.b, y)) / (x - y).norm();
    EXPECT_LE(q, lip);
  }
  Mat bad = w;
  bad(0, 0) = 1;
  EXPECT_THROW(lipschitz_bp(bad, Eigen::Vector2d(0, 0)), std::invalid_argument);
}

TEST(LipschitzNqp, FormulaAndDominance) {
  const Vec b = Eigen::Vector3d(1, -2, 2);
  EXPECT_NEAR(lipschitz_nqp(Mat::Identity(3, 3), b, false), 9.0, 1e-12);
  Mat a = Mat::Zero(2, 2);
  a(0, 0) = 4;
  a(1, 1) = 1;
  EXPECT_NEAR(lipschitz_nqp(a, Eigen::Vector2d(0.6, 0.8), false), 9.0, 1e-12);
  // A diagonal matrix has identity correlation matrix.
  const Vec scaled = Eigen::Vector2d(0.6 / 2, 0.8);
  EXPECT_NEAR(lipschitz_nqp(a, Eigen::Vector2d(0.6, 0.8), true), 3.0 * scaled.norm(), 1e-12);
  EXPECT_THROW(lipschitz_nqp(-Mat::Identity(2, 2), Eigen::Vector2d(1, 1), false), std::invalid_argument);

  // The bound holds for the gradient on the ball ||x|| <= 2 ||b|| / lambda_min.
  bench::Rng rng(8);
  const auto inst = bench::generate_nqp(5, rng);
  const double lip = lipschitz_nqp(inst.a, inst.b, false);
  const double lmin = symmetric_eigen(inst.a).values[0];
  const double radius = 2.0 * inst.b.norm() / lmin;
  auto inside = [&](Vec v) {
    v *= radius * std::pow(rng.uniform(), 0.2) / v.norm();
    return v;
  };
  for (int i = 0; i < 1000; ++i) {
    const Vec x = inside(rng.normal_vector(5));
    const Vec y = inside(rng.normal_vector(5));
    const double q = std::abs(nqp_value(inst.a, inst.b, x) - nqp_value(inst.a, inst.b, y)) / (x - y).norm();
    EXPECT_LE(q, lip);
  }
}

TEST(LipschitzMc, FormulaAndDominance) {
  const std::vector<double> obs{3, 4};
  EXPECT_DOUBLE_EQ(lipschitz_mc(obs), 15.0);
  const std::vector<double> zeros{0, 0};
  EXPECT_EQ(lipschitz_mc(zeros), 0.0);

  bench::Rng rng(9);
  const auto inst = bench::generate_matcomp(5, 5, 2, 0.5, rng);
  const auto& prob = inst.problem;
  double ss = 0;
  for (double v : prob.values) ss += v * v;
  EXPECT_NEAR(lipschitz_mc(prob.values), 3.0 * std::sqrt(ss), 1e-12);

  // Region: observed part of X within 2 ||y_obs||.
  const double lip = lipschitz_mc(prob.values);
  auto sample = [&]() {
    Mat x = rng.normal_matrix(5, 5);
    double n2 = 0;
    for (const auto& [i, j] : prob.indices) n2 += x(i, j) * x(i, j);
    return Mat(x * (2.0 * std::sqrt(ss) * rng.uniform() / std::sqrt(n2)));
  };
  for (int i = 0; i < 1000; ++i) {
    const Mat x = sample();
    const Mat y = sample();
    const double q = std::abs(prob.loss(x) - prob.loss(y)) / (x - y).norm();
    EXPECT_LE(q, lip);
  }
}

TEST(PrecisionBound, ScalarOracles) {
  Mat one = Mat::Ones(1, 1);
  EXPECT_NEAR(lipschitz_precision(one), 2.0, 1e-12);
  EXPECT_NEAR(lipschitz_precision(Mat::Identity(2, 2)), 2.0 * std::sqrt(2.0), 1e-12);
}

TEST(PrecisionBound, RootsSatisfyTheirEquation) {
  bench::Rng rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    const Mat m = rng.normal_matrix(4, 4);
    const Mat s = m * m.transpose() + 0.1 * Mat::Identity(4, 4);
    const auto bound = precision_lipschitz_bound(s);
    const Vec asc = symmetric_eigen(s).values;
    const double sum_omega = asc.sum();
    double sum_log1 = 0;
    for (Eigen::Index j = 0; j < 4; ++j) sum_log1 += std::log(asc[j]) + 1.0;
    for (Eigen::Index i = 0; i < 4; ++i) {
      const double a = asc[i];
      const double target = sum_omega - (sum_log1 - (std::log(a) + 1.0));
      for (double lam : {bound.lambda_min[i], bound.lambda_max[i]}) {
        EXPECT_NEAR(-std::log(lam) + lam * a, target, 1e-10 * std::max(1.0, std::abs(target)));
      }
      EXPECT_LE(bound.lambda_min[i], 1.0 / a);
      EXPECT_GE(bound.lambda_max[i], 1.0 / a);
    }
  }
}

TEST(PrecisionBound, DominatesOnSublevelSet) {
  // Pairs drawn from {f(Theta) <= f(I)}, a convex set, so the gradient bound
  // controls every difference quotient.
  bench::Rng rng(15);
  const Mat m = rng.normal_matrix(3, 3);
  const Mat s = m * m.transpose() / 3.0 + 0.5 * Mat::Identity(3, 3);
  const double lip = lipschitz_precision(s);
  const double level = precision_objective(Mat::Identity(3, 3), s);
  const Mat center = s.inverse();
  auto sample = [&]() {
    for (;;) {
      const Mat g = rng.normal_matrix(3, 3);
      const Mat t = center + 0.5 * rng.uniform() * (g + g.transpose());
      if (precision_objective(t, s) <= level) return t;
    }
  };
  for (int i = 0; i < 1000; ++i) {
    const Mat a = sample();
    const Mat b = sample();
    const double q = std::abs(precision_objective(a, s) - precision_objective(b, s)) / (a - b).norm();
    EXPECT_LE(q, lip);
  }
}
