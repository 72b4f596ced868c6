#include <gtest/gtest.h>

#include <boost/multiprecision/float128.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "qgb/curvature/constants.hpp"
#include "qgb/quadrature/rules.hpp"
#include "qgb/quadrature/sphere.hpp"
#include "qgb/quadrature/volume.hpp"

using namespace qgb;
using quad = boost::multiprecision::float128;

namespace {

std::vector<double> log_points(double lo, double hi, int count) {
  std::vector<double> v;
  for (int i = 0; i < count; ++i) v.push_back(lo * std::pow(hi / lo, double(i) / (count - 1)));
  return v;
}

DistanceKernel power_kernel(double p) {
  return {"d^" + std::to_string(p), [p](double d) { return std::pow(d, p); }};
}

// Independent oracle: mean over the sphere by composite Gauss–Legendre in theta.
double theta_oracle(const std::function<double(double)>& g, double r, double s, int n, int panels = 400) {
  const auto& gl = gauss_legendre_rule(20);
  double num = 0.0, den = 0.0;
  const double pi = std::numbers::pi;
  for (int p = 0; p < panels; ++p) {
    const double a = pi * p / panels, b = pi * (p + 1) / panels;
    for (int i = 0; i < gl.size(); ++i) {
      const double th = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i];
      const double w = 0.5 * (b - a) * gl.weights[i] * std::pow(std::sin(th), n - 2);
      const double d = std::sqrt(r * r + s * s - 2 * r * s * std::cos(th));
      num += w * g(d);
      den += w;
    }
  }
  return num / den;
}

}  // namespace

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  const auto q = gauss_legendre<double>(12);
  double sum = 0, x22 = 0;
  for (int i = 0; i < q.size(); ++i) {
    sum += q.weights[i];
    x22 += q.weights[i] * std::pow(q.nodes[i], 22);
  }
  EXPECT_NEAR(sum, 2.0, 1e-15);
  EXPECT_NEAR(x22, 2.0 / 23.0, 1e-15);
  const auto qq = gauss_legendre<quad>(30);
  quad s4 = 0;
  for (int i = 0; i < qq.size(); ++i) s4 += qq.weights[i] * pow(qq.nodes[i], 4);
  EXPECT_LT(static_cast<double>(abs(s4 - quad(2) / 5)), 1e-32);
}

TEST(GaussJacobi, MomentsOfSphericalWeight) {
  // weight (1-u^2)^{1/2}: normalized second moment is 1/4
  const auto q = gauss_jacobi(16, 0.5, 0.5);
  double m0 = 0, m2 = 0, m8 = 0;
  for (int i = 0; i < q.size(); ++i) {
    m0 += q.weights[i];
    m2 += q.weights[i] * q.nodes[i] * q.nodes[i];
    m8 += q.weights[i] * std::pow(q.nodes[i], 8);
  }
  EXPECT_NEAR(m0, 1.0, 1e-15);
  EXPECT_NEAR(m2, 0.25, 1e-14);
  EXPECT_NEAR(m8, 14.0 / 256.0, 1e-14);  // Catalan number C_4 / 4^4
  const auto asym = gauss_jacobi(10, 1.0, 0.0);
  double mean = 0;
  for (int i = 0; i < asym.size(); ++i) mean += asym.weights[i] * asym.nodes[i];
  EXPECT_NEAR(mean, -1.0 / 3.0, 1e-14);  // int (1-x) x / int (1-x) on [-1,1]
}

TEST(TanhSinh, EndpointSingularities) {
  const auto r = tanh_sinh([](double, double lo, double) { return 1.0 / std::sqrt(lo); }, 0.0, 1.0);
  EXPECT_NEAR(r.value, 2.0, 1e-13);
  const auto l = tanh_sinh([](double, double lo, double hi) { return std::log(lo) * std::sqrt(hi); }, 0.0, 1.0);
  // int_0^1 log(x) sqrt(1-x) dx = (4/3)(log 2 - 4/3)... evaluated via oracle: -(2/3)(8/3 - 2 log 2)
  EXPECT_NEAR(l.value, -(2.0 / 3.0) * (8.0 / 3.0 - 2.0 * std::log(2.0)), 1e-12);
}

TEST(SphereAverage, PowerKernelValue) {
  QuadratureSpec spec;
  const auto v = average_radial_kernel(power_kernel(-2.0), 2.0, 1.0, Dimension(4), spec);
  EXPECT_NEAR(v.value, 0.25, 1e-14);
  EXPECT_GE(v.estimated_error, 0.0);
}

TEST(SphereAverage, ConstantKernelIsNormalized) {
  QuadratureSpec spec;
  const DistanceKernel one{"one", [](double) { return 1.0; }};
  for (int n : {4, 6, 8})
    for (double s : {0.1, 0.999, 1.0, 1.0001, 7.0}) EXPECT_NEAR(average_radial_kernel(one, 1.0, s, Dimension(n), spec).value, 1.0, 1e-13);
}

TEST(SphereAverage, FundamentalKernelIsExactOnGrid) {
  QuadratureSpec spec;
  const auto pts = log_points(1e-2, 1e2, 10);
  for (int n : {4, 6, 8}) {
    const auto k = power_kernel(-(n - 2.0));
    for (double r : pts)
      for (double s : pts) {
        const double exact = std::pow(std::max(r, s), -(n - 2.0));
        const double got = average_radial_kernel(k, r, s, Dimension(n), spec).value;
        EXPECT_NEAR(got / exact, 1.0, 1e-10) << n << " " << r << " " << s;
      }
  }
}

TEST(SphereAverage, NearDiagonalMatchesThetaOracle) {
  QuadratureSpec spec;
  for (int n : {4, 6, 8})
    for (double s : {0.9, 0.97, 0.999, 1.0, 1.003, 1.05, 1.2}) {
      if (s == 1.0) continue;
      for (const auto& k : {power_kernel(-2.0), DistanceKernel{"log", [s](double d) { return std::log(s / d); }}}) {
        const double got = average_radial_kernel(k, 1.0, s, Dimension(n), spec).value;
        const double want = theta_oracle(k.f, 1.0, s, n, 2000);
        EXPECT_NEAR(got, want, 1e-9 * std::max(1.0, std::abs(want))) << n << " s=" << s << " " << k.name;
      }
    }
}

TEST(SphereAverage, InverseSquareInSixDimensionsAgainstMonteCarlo) {
  QuadratureSpec spec;
  const double r = 1.0, s = 3.0;
  const double got = average_radial_kernel(power_kernel(-2.0), r, s, Dimension(6), spec).value;
  EXPECT_LE(got, 1.0 / 9.0);
  // Monte-Carlo oracle: uniform points on S^5 from normalized Gaussian vectors
  std::mt19937_64 rng(20240611);
  std::normal_distribution<double> normal;
  const int samples = 10'000'000;
  double sum = 0, sum2 = 0;
  for (int i = 0; i < samples; ++i) {
    double v[6], norm = 0;
    for (double& c : v) {
      c = normal(rng);
      norm += c * c;
    }
    const double u = v[0] / std::sqrt(norm);  // cosine with the axis through y
    const double f = 1.0 / (r * r + s * s - 2 * r * s * u);
    sum += f;
    sum2 += f * f;
  }
  const double mean = sum / samples;
  const double sd = std::sqrt((sum2 / samples - mean * mean) / samples);
  EXPECT_NEAR(got, mean, 3.0 * sd);
}

TEST(SphereAverage, CoincidentRadiiNonIntegrableKernelIsRejected) {
  QuadratureSpec spec;
  try {
    average_radial_kernel(power_kernel(-5.0), 1.0, 1.0, Dimension(4), spec);
    FAIL() << "expected rejection";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("d^-5"), std::string::npos);
  }
  // d^-2 is integrable on S^3 at coincidence: mean is finite
  const auto v = average_radial_kernel(power_kernel(-2.0), 1.0, 1.0, Dimension(4), spec);
  EXPECT_TRUE(std::isfinite(v.value));
  EXPECT_NEAR(v.value, 1.0, 1e-10);  // n = 4 closed form r^2 J = 1 holds on the diagonal
}

TEST(SphereAverage, BoundsFromKernelFamily) {
  QuadratureSpec spec, fine;
  fine.angular_nodes = 128;
  const auto pts = log_points(1e-2, 1e2, 10);
  for (int n : {4, 6, 8}) {
    double cj = 0, ck = 0, cj2 = 0, ck2 = 0;
    for (double r : pts)
      for (double s : pts) {
        const DistanceKernel j = power_kernel(-2.0);
        const DistanceKernel k{"K", [r, s](double d) { return std::abs(r * r - s * s) / (d * d); }};
        cj = std::max(cj, r * r * average_radial_kernel(j, r, s, Dimension(n), spec).value);
        ck = std::max(ck, average_radial_kernel(k, r, s, Dimension(n), spec).value);
        cj2 = std::max(cj2, r * r * average_radial_kernel(j, r, s, Dimension(n), fine).value);
        ck2 = std::max(ck2, average_radial_kernel(k, r, s, Dimension(n), fine).value);
      }
    EXPECT_LT(std::abs(cj2 / cj - 1), 0.01);
    EXPECT_LT(std::abs(ck2 / ck - 1), 0.01);
    EXPECT_TRUE(std::isfinite(cj));
  }
}

TEST(SphereAverage, LogKernelBoundedOnHalfAnnulus) {
  QuadratureSpec spec;
  for (int n : {4, 6, 8}) {
    double c = 0;
    for (double r : {0.01, 1.0, 100.0})
      for (double q = 0.5; q <= 1.5 + 1e-12; q += 0.05) {
        const double s = q * r;
        const DistanceKernel l{"log", [s](double d) { return std::log(s / d); }};
        c = std::max(c, std::abs(average_radial_kernel(l, r, s, Dimension(n), spec).value));
      }
    EXPECT_LT(c, 1.0);
  }
}

TEST(SphereAverage, AngularDoublingIsSpectral) {
  QuadratureSpec a, b;
  a.angular_nodes = 64;
  b.angular_nodes = 128;
  const DistanceKernel smooth{"exp", [](double d) { return std::exp(-d * d); }};
  for (int n : {4, 6, 8})
    for (double s : {0.2, 0.7, 3.0}) {
      const double x = average_radial_kernel(smooth, 1.0, s, Dimension(n), a).value;
      const double y = average_radial_kernel(smooth, 1.0, s, Dimension(n), b).value;
      EXPECT_LT(std::abs(x - y), 1e-12);
    }
}

TEST(SphereAverage, InvalidInputs) {
  QuadratureSpec spec;
  EXPECT_THROW(average_radial_kernel(power_kernel(-2), 0.0, 1.0, Dimension(4), spec), ConfigError);
  spec.angular_nodes = 4;
  EXPECT_THROW(average_radial_kernel(power_kernel(-2), 1.0, 2.0, Dimension(4), spec), ConfigError);
  QuadratureSpec bad;
  bad.r_lo = 0;
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(AxisymAverage, RadialFieldIsExact) {
  QuadratureSpec spec;
  const AxisymmetricField w = [](double r, double) { return std::log(r) * 0.3; };
  const double r = 2.5;
  const auto a1 = axisym_sphere_average(w, 1.0, r, Dimension(6), spec);
  EXPECT_NEAR(a1.value, std::exp(0.3 * std::log(r)), 1e-14);
  const auto a2 = axisym_sphere_average(w, 2.0, r, Dimension(6), spec);
  EXPECT_NEAR(std::log(a2.value), 2.0 * std::log(a1.value), 1e-13);
}

TEST(AxisymAverage, CosineFieldAgainstOneDimensionalOracle) {
  QuadratureSpec spec;
  const double c = 1.7;
  const AxisymmetricField w = [c](double, double u) { return c * u; };
  const auto got = axisym_sphere_average(w, 1.0, 1.0, Dimension(4), spec);
  const auto& gl = gauss_legendre_rule(40);
  double num = 0, den = 0;
  for (int p = 0; p < 50; ++p) {
    const double a = std::numbers::pi * p / 50, b = std::numbers::pi * (p + 1) / 50;
    for (int i = 0; i < gl.size(); ++i) {
      const double th = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i];
      const double wt = 0.5 * (b - a) * gl.weights[i] * std::sin(th) * std::sin(th);
      num += wt * std::exp(c * std::cos(th));
      den += wt;
    }
  }
  EXPECT_NEAR(got.value, num / den, 1e-13);
}

TEST(AxisymAverage, LargeExponentDoesNotOverflow) {
  QuadratureSpec spec;
  const AxisymmetricField w = [](double r, double u) { return r * r * (1 + 0.1 * u); };
  const double lv = log_axisym_sphere_average(w, 8.0, 100.0, Dimension(8), spec);
  EXPECT_TRUE(std::isfinite(lv));
  EXPECT_GT(lv, 8.0 * 1e4 * 0.9);
  EXPECT_LE(lv, 8.0 * 1e4 * 1.1);
}

TEST(AxisymAverage, CosineSquaredMean) {
  QuadratureSpec spec;
  const AxisymmetricField w = [](double r, double u) { return r * r * u * u; };
  EXPECT_NEAR(axisym_sphere_mean(w, 2.0, Dimension(4), spec).value, 1.0, 1e-14);  // r^2 / 4
  EXPECT_NEAR(axisym_sphere_mean(w, 1.0, Dimension(8), spec).value, 1.0 / 8.0, 1e-14);
}

TEST(RadialVolume, UnitBallInFourDimensions) {
  QuadratureSpec spec;
  const auto v = radial_volume_integral([](double) { return 1.0; }, Dimension(4), spec, 0.0, 1.0);
  EXPECT_FALSE(v.divergent);
  EXPECT_NEAR(v.value, std::numbers::pi * std::numbers::pi / 2.0, 1e-13);
}

TEST(RadialVolume, ZeroIntegrand) {
  QuadratureSpec spec;
  const auto v = radial_volume_integral([](double) { return 0.0; }, Dimension(6), spec);
  EXPECT_EQ(v.value, 0.0);
  EXPECT_FALSE(v.divergent);
}

TEST(RadialVolume, LogarithmicDivergenceIsFlagged) {
  QuadratureSpec spec;
  const auto v = radial_volume_integral([](double s) { return std::pow(s, -4.0); }, Dimension(4), spec, 1.0,
                                        std::numeric_limits<double>::infinity());
  EXPECT_TRUE(v.divergent);
  EXPECT_TRUE(std::isinf(v.value));
}

TEST(RadialVolume, GaussianOverWholeSpace) {
  QuadratureSpec spec;
  for (int n : {4, 6, 8}) {
    const auto v = radial_volume_integral([](double s) { return std::exp(-0.5 * s * s); }, Dimension(n), spec, 0.0,
                                          std::numeric_limits<double>::infinity());
    EXPECT_NEAR(v.value, std::pow(2 * std::numbers::pi, n / 2.0), 1e-12 * v.value);
  }
}

TEST(RadialVolume, ConeVolumeDivergesAtOriginForMinusOne) {
  QuadratureSpec spec;
  const auto v = log_radial_volume_integral([](double s) { return -4.0 * std::log(s); }, Dimension(4), spec, 0.0, 1.0);
  EXPECT_TRUE(v.divergent);
  const auto ok = log_radial_volume_integral([](double s) { return 4.0 * 0.5 * std::log(s); }, Dimension(4), spec, 0.0, 1.0);
  EXPECT_FALSE(ok.divergent);
  const double sigma = constants(Dimension(4)).sigma;
  EXPECT_NEAR(ok.log_value, std::log(sigma / 6.0), 1e-13);
}

TEST(RadialVolume, LogSpaceHandlesOverflowingIntegrand) {
  QuadratureSpec spec;
  // int_0^R e^{n s^2} s^{n-1} ds, compare with the n = 4 closed form
  const double R = 30.0;
  const auto v = log_radial_volume_integral([](double s) { return 4.0 * s * s; }, Dimension(4), spec, 0.0, R);
  ASSERT_FALSE(v.divergent);
  const double sigma = constants(Dimension(4)).sigma;
  // int_0^R e^{4 s^2} s^3 ds = e^{4R^2}(4R^2 - 1)/32 + 1/32
  const double exact = std::log(sigma) + 4 * R * R + std::log((4 * R * R - 1) / 32.0);
  EXPECT_NEAR(v.log_value, exact, 1e-11 * std::abs(exact));
}
