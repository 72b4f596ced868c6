#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qgb/curvature/constants.hpp"
#include "qgb/curvature/curvature.hpp"
#include "qgb/metrics/metric.hpp"

using namespace qgb;

namespace {

constexpr double pi = std::numbers::pi;

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(Constants, Examples) {
  const auto c4 = constants(Dimension(4));
  EXPECT_NEAR(c4.gamma, 4 * pi * pi, 1e-13);
  EXPECT_NEAR(c4.sigma, 2 * pi * pi, 1e-13);
  EXPECT_NEAR(constants(Dimension(6)).gamma, 32 * std::pow(pi, 3), 1e-12);
  for (int n = 4; n <= 30; n += 2) {
    const auto c = constants(Dimension(n));
    EXPECT_NEAR(c.omega * n, c.sigma, 1e-14 * c.sigma);
    EXPECT_NEAR(c.gamma, std::pow(2.0, n - 2) * std::tgamma(n / 2.0) * std::pow(pi, n / 2.0), 1e-12 * c.gamma);
    EXPECT_NEAR(c.sigma, 2 * std::pow(pi, n / 2.0) / std::tgamma(n / 2.0), 1e-12 * c.sigma);
  }
}

TEST(QCurvature, ConeAndFlatVanish) {
  const RadialGrid<double> grid(1e-3, 1e3, 61);
  for (int n : {4, 6, 8})
    for (double alpha : {-0.5, 0.0, 0.5, 2.0}) {
      const auto q = q_curvature(catalog("cone", Dimension(n), {alpha}), grid);
      for (int i = 0; i < grid.size(); ++i) EXPECT_EQ(q.Q(i), 0.0);
    }
  const auto flat = q_curvature(catalog("flat", Dimension(4)), grid);
  EXPECT_EQ(flat.Q.abs().maxCoeff(), 0.0);
}

TEST(QCurvature, RoundSphereIsConstant) {
  const RadialGrid<double> grid(1e-3, 1e3, 61);
  for (int n : {4, 6, 8}) {
    const auto q = q_curvature(catalog("sphere", Dimension(n)), grid);
    for (int i = 0; i < grid.size(); ++i) EXPECT_NEAR(q.Q(i), factorial(n - 1) / 2.0, 1e-12 * factorial(n - 1));
  }
  const auto q4 = q_curvature(catalog("sphere", Dimension(4)), grid);
  EXPECT_NEAR(q4.Q(30), 3.0, 1e-13);
}

TEST(QCurvature, NumericalRouteAgreesOnSphere) {
  const RadialGrid<double> grid(0.2, 5.0, 129);
  DifferentiationOptions opt;
  opt.route = Route::numerical;
  const auto q = q_curvature(catalog("sphere", Dimension(4)), grid, opt);
  ASSERT_FALSE(q.trusted.empty());
  for (int i = q.trusted.first; i <= q.trusted.last; ++i) EXPECT_NEAR(q.Q(i), 3.0, 1e-6);
  EXPECT_EQ(q.Q(0), 0.0);
}

TEST(QCurvature, NormalMetricReproducesDensity) {
  for (int n : {4, 6, 8}) {
    const auto F = QDensity::gaussian(Dimension(n), 0.5);
    const auto m = construct_normal(F, 0.3, 1.7);
    const RadialGrid<double> grid(1e-3, 1e2, 61);
    const auto q = q_curvature(m, grid);
    double sup = 0.0;
    for (int i = 0; i < grid.size(); ++i) sup = std::max(sup, std::abs(F(grid.r(i))));
    for (int i = q.trusted.first; i <= q.trusted.last; ++i)
      EXPECT_NEAR(q.Q(i) * std::exp(n * m.w(grid.r(i))), F(grid.r(i)), 1e-6 * sup);
  }
}

TEST(QCurvature, NormalMetricNumericalRoute) {
  // one independent check of Q e^{nw} = F through finite differences of the potential
  const Dimension n(4);
  const auto F = QDensity::gaussian(n, 0.5);
  const auto m = construct_normal(F, 0.3, 1.7);
  const RadialGrid<double> grid(0.4, 4.0, 129);
  DifferentiationOptions opt;
  opt.route = Route::numerical;
  const auto q = q_curvature(m, grid, opt);
  double sup = 0.0;
  for (int i = 0; i < grid.size(); ++i) sup = std::max(sup, std::abs(F(grid.r(i))));
  for (int i = q.trusted.first; i <= q.trusted.last; ++i) EXPECT_NEAR(q.q_density(i), F(grid.r(i)), 1e-6 * sup);
}

TEST(QCurvature, ConformalShift) {
  const RadialGrid<double> grid(1e-2, 1e2, 41);
  const double c = 0.6;
  for (int n : {4, 6}) {
    const auto m = catalog("sphere", Dimension(n));
    const auto s = m.shifted(c);
    const auto a = q_curvature(m, grid), b = q_curvature(s, grid);
    for (int i = 0; i < grid.size(); ++i) {
      EXPECT_NEAR(b.Q(i), a.Q(i) * std::exp(-n * c), 1e-12 * a.Q(i));
      EXPECT_NEAR(b.q_density(i), a.q_density(i), 1e-12 * std::abs(a.q_density(i)));
    }
    EXPECT_NEAR(total_q(s).integral, total_q(m).integral, 1e-12 * total_q(m).integral);
    const auto k = construct_normal(QDensity::gaussian(Dimension(n), 0.4), 0.1, 0.0);
    EXPECT_NEAR(total_q(k.shifted(c)).integral, total_q(k).integral, 1e-12 * total_q(k).integral);
  }
}

TEST(ScalarCurvature, FlatAndSphere) {
  const RadialGrid<double> grid(1e-3, 1e3, 61);
  EXPECT_EQ(scalar_curvature(catalog("flat", Dimension(6)), grid).R.abs().maxCoeff(), 0.0);
  for (int n : {4, 6, 8}) {
    const auto R = scalar_curvature(catalog("sphere", Dimension(n)), grid);
    for (int i = 0; i < grid.size(); ++i) EXPECT_NEAR(R.R(i), n * (n - 1.0), 1e-10 * n * n);
  }
}

TEST(ScalarCurvature, ConeClosedForm) {
  const RadialGrid<double> grid(1e-3, 1e3, 61);
  for (int n : {4, 6, 8})
    for (double alpha : {-0.7, -0.5, 0.25, 0.5, 1.5}) {
      const auto R = scalar_curvature(catalog("cone", Dimension(n), {alpha}), grid);
      for (int i = 0; i < grid.size(); ++i) {
        const double r = grid.r(i);
        const double exact = -(n - 1.0) * (n - 2.0) * alpha * (alpha + 2.0) * std::pow(r, -2 * alpha - 2);
        EXPECT_LT(rel(R.R(i), exact), 1e-8) << n << " " << alpha << " " << r;
      }
    }
}

TEST(ScalarCurvature, CatalogClosedForms) {
  const RadialGrid<double> grid(1e-2, 3.0, 41);
  for (int n : {4, 6, 8}) {
    const auto cyl = scalar_curvature(catalog("cylinder", Dimension(n)), grid);
    const auto cex = scalar_curvature(catalog("counterexample", Dimension(n)), grid);
    for (int i = 0; i < grid.size(); ++i) {
      const double r = grid.r(i);
      // w = -log r: R = -(n-1)(n-2)(-1)(1) = (n-1)(n-2)
      EXPECT_LT(rel(cyl.R(i), (n - 1.0) * (n - 2.0)), 1e-12);
      // w = r^2: R = -2(n-1)(2n + 2(n-2) r^2) e^{-2 r^2}
      const double exact = -2.0 * (n - 1.0) * (2.0 * n + 2.0 * (n - 2.0) * r * r) * std::exp(-2 * r * r);
      EXPECT_LT(rel(cex.R(i), exact), 1e-12);
    }
  }
}

TEST(ScalarCurvature, NumericalRouteMatchesClosedForm) {
  const RadialGrid<double> grid(0.1, 10.0, 129);
  DifferentiationOptions opt;
  opt.route = Route::numerical;
  for (int n : {4, 6}) {
    const auto m = catalog("sphere", Dimension(n));
    const auto R = scalar_curvature(m, grid, opt);
    for (int i = R.trusted.first; i <= R.trusted.last; ++i) EXPECT_NEAR(R.R(i), n * (n - 1.0), 1e-8 * n * n);
  }
}

TEST(ScalarCurvature, CounterexampleTail) {
  const auto m = catalog("counterexample", Dimension(4));
  double prev = -1e300;
  for (double r : {2.0, 3.0, 4.0, 5.0}) {
    const double R = scalar_curvature_at(m, r);
    EXPECT_LT(R, 0.0);
    EXPECT_GT(R, prev);
    prev = R;
    // r^2 R e^{2w} = -2(n-1) r^2 (2n + 2(n-2) r^2) grows without bound
    EXPECT_LT(r * r * R * std::exp(2 * r * r), -24.0 * r * r);
  }
}

TEST(ScalarCurvature, NonRadialRejected) {
  const auto m = ConformalMetric::axisymmetric(Dimension(4), [](double r, double u) { return r * u; }, "x1");
  EXPECT_THROW(scalar_curvature(m, RadialGrid<double>(0.1, 10.0, 17)), ConfigError);
}

TEST(TotalQ, Examples) {
  EXPECT_EQ(total_q(catalog("cone", Dimension(4), {0.5})).integral, 0.0);
  for (int n : {4, 6, 8}) {
    const double g = constants(Dimension(n)).gamma;
    const auto s = total_q(catalog("sphere", Dimension(n)));
    EXPECT_NEAR(s.integral, 2 * g, 1e-10 * g);
    EXPECT_NEAR(s.abs_integral, 2 * g, 1e-10 * g);
    const auto k = total_q(construct_normal(QDensity::gaussian(Dimension(n), 0.5), 0.0, 0.0));
    EXPECT_NEAR(k.integral, 0.5 * g, 1e-10 * g);
  }
  EXPECT_NEAR(total_q(catalog("sphere", Dimension(4))).integral, 8 * pi * pi, 1e-9);
}

TEST(TotalQ, StableUnderRefinement) {
  QuadratureSpec coarse, fine;
  fine.radial_nodes = 2 * coarse.radial_nodes;
  for (const char* name : {"sphere", "flat", "cylinder", "counterexample"})
    for (int n : {4, 6, 8}) {
      const auto m = catalog(name, Dimension(n));
      const double a = total_q(m, coarse).integral, b = total_q(m, fine).integral;
      EXPECT_LE(std::abs(a - b), 1e-8 * std::max(std::abs(a), 1e-300)) << name << " " << n;
    }
}

TEST(TotalQ, DivergentIsRejected) {
  const auto m = ConformalMetric::radial(Dimension(4), RadialExpression::power(0.5), "r^{1/2}");
  EXPECT_THROW(total_q(m), DivergenceError);
}

TEST(Hypothesis, ConeBranches) {
  for (int n : {4, 6}) {
    const auto good = hypothesis_check(catalog("cone", Dimension(n), {-0.5}));
    EXPECT_TRUE(good.branch_a);
    EXPECT_TRUE(good.branch_b);
    const auto bad = hypothesis_check(catalog("cone", Dimension(n), {0.5}));
    EXPECT_FALSE(bad.scalar_nonnegative_at_zero);
    EXPECT_FALSE(bad.scalar_nonnegative_at_infinity);
    EXPECT_TRUE(bad.branch_b);
    EXPECT_TRUE(bad.holds());
  }
}

TEST(Hypothesis, CounterexampleFailsBoth) {
  const auto v = hypothesis_check(catalog("counterexample", Dimension(4)));
  EXPECT_FALSE(v.branch_a);
  EXPECT_FALSE(v.scalar_nonnegative_at_infinity);
  EXPECT_FALSE(v.gradient_bounded);
  EXPECT_FALSE(v.branch_b);
  EXPECT_FALSE(v.holds());
  EXPECT_TRUE(v.liminf_scalar_nonnegative);
  EXPECT_TRUE(v.liminf_only);
}

TEST(Hypothesis, SphereAndNormalMetric) {
  EXPECT_TRUE(hypothesis_check(catalog("sphere", Dimension(6))).holds());
  EXPECT_TRUE(hypothesis_check(catalog("sphere", Dimension(6))).branch_a);
  const auto k = construct_normal(QDensity::gaussian(Dimension(4), 0.5), 0.2, 0.0);
  EXPECT_TRUE(hypothesis_check(k).branch_b);
}
