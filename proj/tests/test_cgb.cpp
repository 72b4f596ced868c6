#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qgb/cgb/cgb.hpp"
#include "qgb/curvature/constants.hpp"
#include "qgb/radial/differentiation.hpp"

using namespace qgb;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> decade_radii(double lo, double hi, int per_decade) {
  std::vector<double> r;
  const int steps = static_cast<int>(std::lround(std::log10(hi / lo) * per_decade));
  for (int i = 0; i <= steps; ++i) r.push_back(lo * std::pow(hi / lo, double(i) / steps));
  return r;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(MixedVolumes, FlatUnitBall) {
  const auto v = mixed_volumes(catalog("flat", Dimension(4)), {0.5, 1.0});
  EXPECT_NEAR(v.V_n[1], pi * pi / 2, 1e-13);
  EXPECT_NEAR(v.V_n_minus_1[1], pi * pi / 2, 1e-13);
}

TEST(MixedVolumes, ConeClosedForms) {
  const auto radii = decade_radii(1e-3, 1e3, 2);
  for (int n : {4, 6, 8})
    for (double alpha : {-0.5, 0.5, 1.0}) {
      const auto v = mixed_volumes(catalog("cone", Dimension(n), {alpha}), radii);
      const double sigma = constants(Dimension(n)).sigma;
      for (std::size_t i = 0; i < radii.size(); ++i) {
        const double r = radii[i];
        EXPECT_LT(rel(v.V_n[i], sigma * std::pow(r, n * (1 + alpha)) / (n * (1 + alpha))), 1e-10);
        EXPECT_LT(rel(v.V_n_minus_1[i], sigma * std::pow(r, (n - 1) * (1 + alpha)) / n), 1e-10);
        if (i > 0) EXPECT_GT(v.V_n[i], v.V_n[i - 1]);
        EXPECT_GT(v.V_n_minus_1[i], 0.0);
      }
    }
}

TEST(MixedVolumes, CylinderAndSphere) {
  const auto radii = decade_radii(1e-2, 1e2, 2);
  const auto cyl = annulus_volumes(catalog("cylinder", Dimension(6)), radii, 1.0);
  const double sigma6 = constants(Dimension(6)).sigma;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    EXPECT_LT(rel(cyl.V_n_minus_1[i], sigma6 / 6), 1e-12);
    if (radii[i] != 1.0) EXPECT_LT(rel(cyl.V_n[i], sigma6 * std::abs(std::log(radii[i]))), 1e-10);
  }
  // the round S^4 has volume 8 pi^2 / 3
  const auto s = mixed_volumes(catalog("sphere", Dimension(4)), {1.0, 1e6});
  EXPECT_LT(rel(s.V_n[1], 8 * pi * pi / 3), 1e-10);
  EXPECT_LT(rel(s.V_n[0], 4 * pi * pi / 3), 1e-10);
}

TEST(MixedVolumes, Errors) {
  EXPECT_THROW(mixed_volumes(catalog("cylinder", Dimension(4)), {1.0, 2.0}), DivergenceError);
  EXPECT_THROW(mixed_volumes(catalog("flat", Dimension(4)), {2.0, 1.0}), ConfigError);
  EXPECT_THROW(mixed_volumes(catalog("flat", Dimension(4)), {}), ConfigError);
}

TEST(MixedVolumes, DerivativeIdentities) {
  // d/dt V_n = sigma r^n e^{nw}, d/dt V_{n-1} = (n-1)/n sigma r^{n-1} e^{(n-1)w} (r w' + 1), t = log r
  const double h = 0.01;
  std::vector<double> offsets;
  for (int j = -4; j <= 4; ++j) offsets.push_back(j);
  const auto wts = fornberg_weights<double>(1, offsets);
  for (int n : {4, 6}) {
    const double sigma = constants(Dimension(n)).sigma;
    for (const auto& m : {catalog("sphere", Dimension(n)), construct_normal(QDensity::gaussian(Dimension(n), 0.3), 0.2, 0.0)}) {
      for (double r : {0.1, 1.0, 7.0}) {
        std::vector<double> radii;
        for (double o : offsets) radii.push_back(r * std::exp(h * o));
        const auto v = mixed_volumes(m, radii);
        double dv = 0.0, ds = 0.0;
        for (std::size_t j = 0; j < radii.size(); ++j) {
          dv += wts[1][j] * v.V_n[j] / h;
          ds += wts[1][j] * v.V_n_minus_1[j] / h;
        }
        EXPECT_LT(rel(dv, sigma * std::pow(r, n) * std::exp(n * m.w(r))), 1e-8);
        const double expect =
            (n - 1.0) / n * sigma * std::pow(r, n - 1) * std::exp((n - 1) * m.w(r)) * (m.r_dw_dr(r) + 1.0);
        const double scale = (n - 1.0) / n * sigma * std::pow(r, n - 1) * std::exp((n - 1) * m.w(r)) *
                             (std::abs(m.r_dw_dr(r)) + 1.0);
        EXPECT_LT(std::abs(ds - expect), 1e-8 * scale);
      }
    }
  }
}

TEST(Isoperimetric, FlatAndCone) {
  const auto radii = series_radii(1e-4, 1e4);
  for (int n : {4, 6, 8}) {
    const auto flat = isoperimetric_series(catalog("flat", Dimension(n)), IsoVariant::ball, radii);
    for (double c : flat.C) EXPECT_NEAR(c, 1.0, 1e-12);
    for (double alpha : {-0.5, 0.5, 1.0}) {
      const auto s = isoperimetric_series(catalog("cone", Dimension(n), {alpha}), IsoVariant::ball, radii);
      for (double c : s.C) EXPECT_NEAR(c, 1.0 + alpha, 1e-10);
      EXPECT_NEAR(s.at_zero.value, 1.0 + alpha, 1e-10);
      EXPECT_NEAR(s.at_infinity.value, 1.0 + alpha, 1e-10);
    }
  }
}

TEST(Isoperimetric, CylinderAnnulusLimitsVanish) {
  const auto radii = series_radii(1e-6, 1e6);
  const auto s = isoperimetric_series(catalog("cylinder", Dimension(4)), IsoVariant::annulus, radii);
  EXPECT_DOUBLE_EQ(s.R, 1.0);
  EXPECT_FALSE(s.diagnostics.empty());  // r = R skipped
  EXPECT_TRUE(s.at_zero.converged);
  EXPECT_TRUE(s.at_infinity.converged);
  EXPECT_NEAR(s.at_zero.value, 0.0, 1e-6);
  EXPECT_NEAR(s.at_infinity.value, 0.0, 1e-6);
  for (double c : s.C)
    if (std::isfinite(c)) EXPECT_GE(c, 0.0);
}

TEST(Isoperimetric, LHopitalConsistency) {
  const auto radii = series_radii(1e-6, 1e6);
  for (int n : {4, 6}) {
    const auto m = construct_normal(QDensity::gaussian(Dimension(n), 0.4), 0.3, 0.5);
    const auto s = isoperimetric_series(m, IsoVariant::ball, radii);
    ASSERT_TRUE(s.at_zero.converged && s.at_infinity.converged);
    EXPECT_NEAR(s.at_zero.value, m.r_dw_dr(1e-6) + 1.0, 1e-6);
    EXPECT_NEAR(s.at_infinity.value, 0.3 - 0.4 + 1.0, 1e-6);
  }
}

TEST(Defect, ConeExample) {
  for (int n : {4, 6, 8})
    for (double alpha : {-0.5, 0.5, 1.0}) {
      const auto r = defect_report(catalog("cone", Dimension(n), {alpha}));
      EXPECT_EQ(r.chi, 1);
      EXPECT_EQ(r.total_q_over_gamma, 0.0);
      ASSERT_EQ(r.nu.size(), 1u);
      ASSERT_EQ(r.mu.size(), 1u);
      EXPECT_NEAR(r.nu[0], 1.0 + alpha, 1e-12);
      EXPECT_NEAR(r.mu[0], alpha, 1e-12);
      EXPECT_LT(r.residual, 1e-12);
      EXPECT_TRUE(r.pass);
      EXPECT_NEAR(r.values.at("nu_series"), 1.0 + alpha, 1e-6);
      EXPECT_NEAR(r.values.at("mu_series"), alpha, 1e-6);
      ASSERT_TRUE(r.hypotheses);
      EXPECT_TRUE(r.hypotheses->branch_b);
      EXPECT_EQ(r.hypotheses->branch_a, alpha < 0.0);
      EXPECT_DOUBLE_EQ(r.residual, std::abs(r.chi - r.total_q_over_gamma - (r.nu[0] - r.mu[0])));
    }
}

TEST(Defect, NormalMetricExample) {
  for (int n : {4, 6, 8}) {
    const auto r = defect_report(construct_normal(QDensity::gaussian(Dimension(n), 0.25), 0.0, 0.0));
    EXPECT_NEAR(r.total_q_over_gamma, 0.25, 1e-10);
    EXPECT_NEAR(r.nu[0], 0.75, 1e-6);
    EXPECT_NEAR(r.mu[0], 0.0, 1e-9);
    EXPECT_LT(r.residual, 1e-4);
    EXPECT_DOUBLE_EQ(r.tolerance, 1e-4);
    EXPECT_TRUE(r.pass);
    ASSERT_TRUE(r.fang_holds);
    EXPECT_TRUE(*r.fang_holds);
  }
}

TEST(Defect, CylinderTwoEnds) {
  DefectOptions opt;
  opt.topology = Topology::two_ends;
  for (int n : {4, 6, 8}) {
    const auto r = defect_report(catalog("cylinder", Dimension(n)), opt);
    EXPECT_EQ(r.chi, 0);
    ASSERT_EQ(r.nu.size(), 2u);
    EXPECT_TRUE(r.mu.empty());
    EXPECT_NEAR(r.nu[0], 0.0, 1e-12);
    EXPECT_NEAR(r.nu[1], 0.0, 1e-12);
    EXPECT_LT(r.residual, 1e-12);
    EXPECT_TRUE(r.pass);
    EXPECT_LT(r.values.at("R_spread_nu1"), 1e-6);
    EXPECT_LT(r.values.at("R_spread_nu2"), 1e-6);
    for (int j = 0; j < 3; ++j) {
      EXPECT_NEAR(r.values.at("nu1_series_R" + std::to_string(j)), 0.0, 1e-4);
      EXPECT_NEAR(r.values.at("nu2_series_R" + std::to_string(j)), 0.0, 1e-4);
    }
  }
}

TEST(Defect, CounterexampleRefusesPass) {
  const auto r = defect_report(catalog("counterexample", Dimension(4)));
  EXPECT_TRUE(r.divergent);
  EXPECT_FALSE(r.pass);
  EXPECT_TRUE(std::isinf(r.nu[0]));
  EXPECT_EQ(r.total_q_over_gamma, 0.0);
  bool saw = false;
  for (const auto& d : r.diagnostics) saw = saw || d.find("nu diverges") != std::string::npos;
  EXPECT_TRUE(saw);
  // C(r) grows without bound along the geometric radii
  int above = 0;
  for (std::size_t i = 0; i < r.C.size(); ++i)
    if (r.volumes.r[i] >= 3.0 && r.C[i] > 10.0) ++above;
  EXPECT_GT(above, 5);
}

TEST(Defect, TopologyMismatch) {
  DefectOptions two;
  two.topology = Topology::two_ends;
  EXPECT_THROW(defect_report(catalog("cone", Dimension(4), {0.5}), two), ConfigError);
  EXPECT_THROW(defect_report(catalog("cylinder", Dimension(4))), ConfigError);
  EXPECT_THROW(defect_report(catalog("sphere", Dimension(4))), ConfigError);
  EXPECT_THROW(parse_topology("three_ends"), ConfigError);
}

TEST(Defect, FangSignForSmoothMetrics) {
  for (double mass : {0.1, 0.5, 0.9}) {
    const auto r = defect_report(construct_normal(QDensity::gaussian(Dimension(4), mass), 0.0, 0.0));
    ASSERT_TRUE(r.fang_holds);
    EXPECT_TRUE(*r.fang_holds);
    EXPECT_GE(r.chi - r.total_q_over_gamma, -r.tolerance);
  }
}

TEST(Aggregate, Examples) {
  const auto closed = multi_end_aggregate({}, 2.0, 0, 0);
  EXPECT_EQ(closed.chi, 2);
  EXPECT_EQ(closed.residual, 0.0);
  EXPECT_TRUE(closed.pass);

  const auto two = multi_end_aggregate({end_piece(0.0), end_piece(0.0), background_piece()}, 0.0, 2, 0);
  EXPECT_EQ(two.chi, 0);
  EXPECT_EQ(two.residual, 0.0);
  EXPECT_TRUE(two.pass);

  const double total = 2.0 - 1.0 - (0.75 - 0.5);
  const auto mixed = multi_end_aggregate({end_piece(0.75), singular_piece(0.5)}, total, 1, 1);
  EXPECT_LT(mixed.residual, 1e-14);
  EXPECT_LT(mixed.values.at("aggregation_residual"), 1e-14);
  EXPECT_TRUE(mixed.pass);

  EXPECT_THROW(multi_end_aggregate({end_piece(0.75)}, total, 1, 1), ConfigError);
  const auto wrong = multi_end_aggregate({end_piece(0.75), singular_piece(0.5)}, total + 0.1, 1, 1);
  EXPECT_FALSE(wrong.pass);
}

TEST(Aggregate, FromDefectReports) {
  const auto cone = defect_report(catalog("cone", Dimension(4), {0.5}));
  const auto normal = defect_report(construct_normal(QDensity::gaussian(Dimension(4), 0.25), 0.0, 0.0));
  const auto e = end_piece(normal.nu[0]);
  const auto s = singular_piece(cone.mu[0]);
  const double total = 2.0 + e.total_q_over_gamma + s.total_q_over_gamma;
  const auto agg = multi_end_aggregate({e, s, background_piece()}, total, 1, 1);
  EXPECT_LT(agg.values.at("aggregation_residual"), 1e-14);
  EXPECT_LT(agg.residual, 1e-14);
}

TEST(Averaging, RadialIsOne) {
  const auto a = averaging_comparison(catalog("sphere", Dimension(4)), 3.0, {0.1, 1.0, 10.0});
  for (double v : a.log_ratio) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(averaging_comparison(catalog("sphere", Dimension(4)), 0.0, {1.0}), ConfigError);
}

TEST(Averaging, AxisymmetricNormalMetric) {
  QuadratureSpec spec;
  spec.angular_nodes = 32;
  spec.azimuthal_nodes = 16;
  const Dimension n(4);
  const auto m = construct_normal(QDensity::capped_gaussian(n, 0.3, 1.0, spec), 0.0, 0.0, spec);
  const std::vector<double> radii{1e-3, 1.0, 1e3};
  for (double k : {3.0, 4.0}) {
    const auto a = averaging_comparison(m, k, radii, spec);
    EXPECT_LT(std::abs(a.log_ratio[0]), std::abs(a.log_ratio[1]));
    EXPECT_LT(std::abs(a.log_ratio[2]), std::abs(a.log_ratio[1]));
    EXPECT_LT(std::abs(a.log_ratio[0]), 0.01);
    EXPECT_LT(std::abs(a.log_ratio[2]), 0.01);
  }
}

TEST(Averaging, FubiniAgainstRadialPotential) {
  // the sphere mean of the axisymmetric potential is the potential of the averaged density
  QuadratureSpec spec;
  spec.angular_nodes = 64;
  spec.azimuthal_nodes = 48;
  const Dimension n(4);
  const auto F = QDensity::capped_gaussian(n, 0.3, 1.0, spec);
  const auto m = construct_normal(F, 0.0, 0.0, spec);
  const auto avg = m.averaged();
  const AxisymmetricField f = [&m](double r, double u) { return m.w(r, u); };
  for (double r : {0.3, 1.0, 3.0})
    EXPECT_NEAR(axisym_sphere_mean(f, r, n, spec).value, avg.w(r), 1e-8) << r;
}
