#include <gtest/gtest.h>

#include <cmath>

#include "mmopt/barrier.hpp"
#include "mmopt/bench.hpp"

using namespace mmopt;

namespace {

// The surrogate g(x | xn) itself, for finite differences.
double surrogate_value(const BarrierProblem& prob, const Vec& x, const Vec& xn) {
  double g = prob.objective.value(x);
  for (const auto& v : prob.constraints) {
    g += -prob.rho * v.value(xn) * std::log(v.value(x)) + prob.rho * v.gradient(xn).dot(x - xn);
  }
  return g;
}

BarrierProblem random_qp(bench::Rng& rng, Eigen::Index n, Vec& x0) {
  const Mat m = rng.normal_matrix(n, n);
  const Mat q = m.transpose() * m + Mat::Identity(n, n);
  const Vec c = rng.normal_vector(n);
  const Mat g = rng.normal_matrix(2 * n, n);
  x0 = 0.1 * rng.normal_vector(n);
  const Vec h = g * x0 + Vec::Constant(2 * n, 1.0) + Vec(rng.normal_vector(2 * n).cwiseAbs());
  const Mat a = rng.normal_matrix(1, n);
  const Vec b = a * x0;
  return make_quadratic_program(0.5 * (q + q.transpose()), c, a, b, g, h, 0.7);
}

}  // namespace

TEST(SurrogateDerivatives, LpToyAtCenter) {
  const auto lp = bench::lp_toy();
  const auto prob = make_linear_program(lp.a, lp.b, lp.c, 1.0);
  const auto d = surrogate_derivatives(prob, lp.x0);
  EXPECT_LE((d.gradient - lp.c).norm(), 1e-15);
  EXPECT_LE((d.hessian - 3.0 * Mat::Identity(6, 6)).norm(), 1e-14);
}

TEST(SurrogateDerivatives, BarrierOffGivesObjectiveDerivatives) {
  bench::Rng rng(1);
  Vec x0;
  auto prob = random_qp(rng, 3, x0);
  prob.rho = 0.0;
  const auto d = surrogate_derivatives(prob, x0);
  EXPECT_LE((d.gradient - prob.objective.gradient(x0)).norm(), 1e-14);
  EXPECT_LE((d.hessian - prob.objective.hessian(x0)).norm(), 1e-14);
}

TEST(SurrogateDerivatives, MatchFiniteDifferences) {
  bench::Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    Vec xn;
    const auto prob = random_qp(rng, 4, xn);
    const auto d = surrogate_derivatives(prob, xn);
    const double h = 1e-5;
    Vec grad_fd(4);
    Mat hess_fd(4, 4);
    for (Eigen::Index i = 0; i < 4; ++i) {
      const Vec ei = Vec::Unit(4, i) * h;
      grad_fd[i] = (surrogate_value(prob, xn + ei, xn) - surrogate_value(prob, xn - ei, xn)) / (2 * h);
      for (Eigen::Index j = 0; j < 4; ++j) {
        const Vec ej = Vec::Unit(4, j) * h;
        hess_fd(i, j) = (surrogate_value(prob, xn + ei + ej, xn) - surrogate_value(prob, xn + ei - ej, xn) -
                         surrogate_value(prob, xn - ei + ej, xn) + surrogate_value(prob, xn - ei - ej, xn)) /
                        (4 * h * h);
      }
    }
    // Tangency: the surrogate gradient equals grad f at the anchor.
    EXPECT_LE((grad_fd - d.gradient).norm(), 1e-6 * std::max(1.0, d.gradient.norm()));
    EXPECT_LE((hess_fd - d.hessian).norm(), 1e-6 * std::max(1.0, d.hessian.norm()) * 100);
  }
}

TEST(SurrogateDerivatives, RejectsExteriorPoint) {
  const auto lp = bench::lp_toy();
  const auto prob = make_linear_program(lp.a, lp.b, lp.c, 1.0);
  Vec x = lp.x0;
  x[0] = -0.1;
  EXPECT_THROW(surrogate_derivatives(prob, x), std::invalid_argument);
}

TEST(NewtonDirection, LpToyFirstDirection) {
  const auto lp = bench::lp_toy();
  const auto prob = make_linear_program(lp.a, lp.b, lp.c, 1.0);
  const auto d = surrogate_derivatives(prob, lp.x0);
  const Vec u = newton_direction(prob, lp.x0, d.gradient, d.hessian);
  Vec want(6);
  want << 1, 1, 1, -2, -2, -2;
  want /= 15.0;
  EXPECT_LE((u - want).norm(), 1e-12);
  EXPECT_LE((lp.a * u).norm(), 1e-12);
  EXPECT_LE((lp_newton_direction(lp.a, lp.b, lp.c, lp.x0, 1.0) - want).norm(), 1e-12);
}

TEST(NewtonDirection, KktAgreesWithClosedFormOnRandomLp) {
  bench::Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Mat a = rng.normal_matrix(3, 7);
    Vec x(7);
    for (Eigen::Index i = 0; i < 7; ++i) x[i] = 0.1 + rng.uniform();
    const Vec b = a * x;
    const Vec c = rng.normal_vector(7);
    const double rho = 0.5 + rng.uniform();
    const auto prob = make_linear_program(a, b, c, rho);
    const auto d = surrogate_derivatives(prob, x);
    const Vec u = newton_direction(prob, x, d.gradient, d.hessian);
    EXPECT_LE((u - lp_newton_direction(a, b, c, x, rho)).norm(), 1e-10 * std::max(1.0, u.norm()));
    EXPECT_LE((a * u).norm(), 1e-10);
  }
}

TEST(NewtonDirection, IndefiniteHessianUsesFullKkt) {
  // H is indefinite but positive definite on the null space of A.
  BarrierProblem prob;
  Mat h(2, 2);
  h << 1, 0, 0, -1;
  prob.objective = {[h](const Vec& x) { return 0.5 * x.dot(h * x); }, [h](const Vec& x) -> Vec { return h * x; },
                    [h](const Vec&) -> Mat { return h; }};
  prob.a = Mat(1, 2);
  prob.a << 0, 1;
  prob.b = Vec::Zero(1);
  const Vec x = Eigen::Vector2d(2.0, 0.0);
  const Vec u = newton_direction(prob, x, h * x, h);
  EXPECT_LE((u - Eigen::Vector2d(-2.0, 0.0)).norm(), 1e-12);
}

TEST(NewtonDirection, SingularSystemIsReported) {
  BarrierProblem prob;
  const Mat zero = Mat::Zero(2, 2);
  prob.a = Mat::Zero(1, 2);
  prob.b = Vec::Zero(1);
  EXPECT_THROW(newton_direction(prob, Vec::Zero(2), Vec::Ones(2), zero), NumericalError);
}

TEST(ConcordanceConstant, Examples) {
  const auto lp = bench::lp_toy();
  auto prob = make_linear_program(lp.a, lp.b, lp.c, 1.0);
  EXPECT_NEAR(concordance_constant(prob, lp.x0), std::sqrt(3.0), 1e-14);
  prob.rho = 4.0;
  EXPECT_NEAR(concordance_constant(prob, Vec::Ones(6)), 0.5, 1e-15);
  EXPECT_LT(concordance_constant(prob, lp.x0), std::sqrt(3.0));
}

TEST(DampedStep, Examples) {
  EXPECT_NEAR(damped_step_length(-0.2, 0.2, std::sqrt(3.0)), 0.56351, 1e-5);
  EXPECT_DOUBLE_EQ(damped_step_length(-0.3, 0.6, 0.0), 0.5);
  EXPECT_EQ(damped_step_length(0.0, 1.0, 2.0), 0.0);
  EXPECT_THROW(damped_step_length(-1.0, 0.0, 1.0), std::invalid_argument);
  // c t sqrt(h'') < 1 keeps the logarithm defined.
  const double t = damped_step_length(-5.0, 0.3, 4.0);
  EXPECT_LT(4.0 * t * std::sqrt(0.3), 1.0);
}

TEST(BarrierSolve, LpToyWithoutSafeguard) {
  const auto lp = bench::lp_toy();
  BarrierOptions opts;
  opts.safeguard = false;
  opts.max_iter = 40;
  const auto res = barrier_solve(make_linear_program(lp.a, lp.b, lp.c, 1.0), lp.x0, opts);
  ASSERT_GE(res.trace.size(), 5u);
  EXPECT_NEAR(res.trace[0].objective, -1.2, 1e-5);
  EXPECT_NEAR(res.trace[1].objective, -4.0 / 3.0, 1e-5);
  EXPECT_NEAR(res.trace[2].objective, -1.41176, 1e-5);
  EXPECT_NEAR(res.trace[0].step_norm, 0.25820, 1e-5);
  EXPECT_NEAR(lp.c.dot(res.x), -1.5, 1e-5);
  Vec want(6);
  want << 0.5, 0.5, 0.5, 0, 0, 0;
  EXPECT_LE((res.x - want).norm(), 1e-5);
}

TEST(BarrierSolve, SafeguardedInvariants) {
  const auto lp = bench::lp_toy();
  const auto prob = make_linear_program(lp.a, lp.b, lp.c, 1.0);
  BarrierOptions opts;
  opts.max_iter = 40;
  const auto res = barrier_solve(prob, lp.x0, opts);
  EXPECT_NEAR(res.trace[0].objective, -1.11270, 1e-5);
  EXPECT_NEAR(res.trace[0].step_length, 0.56351, 1e-5);
  double prev = lp.c.dot(lp.x0);
  for (const auto& it : res.trace) {
    EXPECT_LE(it.objective, prev + 1e-12);
    EXPECT_GT(it.min_constraint, 0.0);
    prev = it.objective;
  }
  EXPECT_NEAR(lp.c.dot(res.x), -1.5, 1e-5);
  EXPECT_LE((lp.a * res.x - lp.b).norm(), 1e-9);
}

TEST(BarrierSolve, DirectionalDerivativeIsNonpositive) {
  bench::Rng rng(4);
  Vec x;
  const auto prob = random_qp(rng, 4, x);
  for (int n = 0; n < 20; ++n) {
    const auto d = surrogate_derivatives(prob, x);
    const Vec u = newton_direction(prob, x, d.gradient, d.hessian);
    EXPECT_LE(d.gradient.dot(u), 1e-14);
    const double hpp = u.dot(d.hessian * u);
    if (hpp <= 0) break;
    x += damped_step_length(std::min(0.0, d.gradient.dot(u)), hpp, concordance_constant(prob, x)) * u;
    EXPECT_LE((prob.a * x - prob.b).norm(), 1e-9);
  }
}

TEST(BarrierSolve, InteriorQuadraticMinimumIsReached) {
  // minimize 1/2 ||x - m||^2 over the box -1 <= x <= 1 with m inside.
  const Vec m = Eigen::Vector2d(0.3, -0.2);
  Mat g(4, 2);
  g << 1, 0, 0, 1, -1, 0, 0, -1;
  const auto prob = make_quadratic_program(Mat::Identity(2, 2), -m, Mat::Zero(0, 2), Vec::Zero(0), g,
                                           Vec::Ones(4), 1.0);
  BarrierOptions opts;
  opts.max_iter = 500;
  const auto res = barrier_solve(prob, Vec::Zero(2), opts);
  EXPECT_LE((res.x - m).norm(), 1e-8);
}

TEST(BarrierSolve, ViolationWithoutSafeguardIsReported) {
  // A full Newton step for min 100 x1 on the simplex lands at x1 = -24.5.
  Mat a(1, 2);
  a << 1, 1;
  BarrierOptions opts;
  opts.safeguard = false;
  const auto start = Eigen::Vector2d(0.5, 0.5);
  const auto big = make_linear_program(a, Vec::Ones(1), Eigen::Vector2d(100.0, 0.0), 1.0);
  const auto r2 = barrier_solve(big, start, opts);
  EXPECT_EQ(r2.status, SolveStatus::interior_violation);
  EXPECT_FALSE(r2.message.empty());
  EXPECT_TRUE((r2.x.array() > 0).all());
  opts.safeguard = true;
  const auto r3 = barrier_solve(big, start, opts);
  EXPECT_NE(r3.status, SolveStatus::interior_violation);
}

TEST(BarrierProblem, RejectsInfeasibleStart) {
  const auto lp = bench::lp_toy();
  const auto prob = make_linear_program(lp.a, lp.b, lp.c, 1.0);
  EXPECT_THROW(barrier_solve(prob, Vec::Ones(6)), std::invalid_argument);
  Vec x = lp.x0;
  x[3] = 0;
  x[0] = 0.5;
  EXPECT_THROW(barrier_solve(prob, x), std::invalid_argument);
}
