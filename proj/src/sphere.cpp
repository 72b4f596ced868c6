#include "qgb/quadrature/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qgb/quadrature/rules.hpp"

namespace qgb {

namespace {

double square(double x) { return x * x; }

// int_0^2 (v (2 - v))^a dv
double polar_normalization(double a) {
  return std::exp((2.0 * a + 1.0) * std::log(2.0) + 2.0 * std::lgamma(a + 1.0) - std::lgamma(2.0 * a + 2.0));
}

double far_average(const DistanceKernel& f, double r, double s, const QuadratureRule<double>& rule) {
  const double rs2 = 2.0 * r * s, diff2 = square(r - s);
  double acc = 0.0;
  for (int i = 0; i < rule.size(); ++i) acc += rule.weights[i] * f.f(std::sqrt(diff2 + rs2 * (1.0 - rule.nodes[i])));
  return acc;
}

void check_integrable_at_coincidence(const DistanceKernel& f, double r, Dimension n) {
  const double d1 = 1e-6 * r, d2 = 1e-8 * r;
  const double g1 = std::abs(f.f(d1)), g2 = std::abs(f.f(d2));
  if (!std::isfinite(g1) || !std::isfinite(g2))
    throw NumericalError("non-integrable singularity: kernel '" + f.name + "' is not finite near |x - y| = 0");
  if (g1 == 0.0 || g2 == 0.0) return;
  const double beta = std::log(g2 / g1) / std::log(d1 / d2);
  if (beta >= n - 1.0 - 1e-3)
    throw NumericalError("non-integrable singularity: kernel '" + f.name + "' behaves like d^-" +
                         std::to_string(beta) + " at r = s, not integrable on S^" + std::to_string(n - 1));
}

}  // namespace

SphereAverage average_radial_kernel(const DistanceKernel& f, double r, double s, Dimension n,
                                    const QuadratureSpec& spec) {
  spec.validate();
  if (!(r > 0.0) || !(s > 0.0)) throw ConfigError("average_radial_kernel: radii must be positive");
  const double a = 0.5 * (n - 3);
  const double eps = square(r - s) / (2.0 * r * s);
  const double switch_eps = 0.5 * square(20.0 / spec.angular_nodes);
  SphereAverage out;
  if (eps >= switch_eps) {
    const auto& rule = gauss_jacobi_rule(spec.angular_nodes, a);
    const auto& coarse = gauss_jacobi_rule(std::max(8, (2 * spec.angular_nodes) / 3), a);
    out.value = far_average(f, r, s, rule);
    out.estimated_error = std::abs(out.value - far_average(f, r, s, coarse));
    return out;
  }

  if (r == s) check_integrable_at_coincidence(f, r, n);
  // panels [0, eps], [eps, 2 eps], ... graded towards the near-singular endpoint v = 0
  std::vector<double> breaks{0.0};
  if (eps > 1e-300)
    for (double b = eps; b < 1.0; b *= 2.0) breaks.push_back(b);
  if (breaks.size() == 1) breaks.push_back(1.0);
  breaks.push_back(2.0);

  const double rs2 = 2.0 * r * s, diff2 = square(r - s);
  double total = 0.0, err = 0.0;
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double lo = breaks[p], hi = breaks[p + 1];
    auto integrand = [&](double, double gap_lo, double gap_hi) {
      const double v = lo + gap_lo;
      const double w = (2.0 - hi) + gap_hi;  // 2 - v
      const double weight = a == 0.0 ? 1.0 : std::pow(v * w, a);
      return f.f(std::sqrt(diff2 + rs2 * v)) * weight;
    };
    const auto res = tanh_sinh(integrand, lo, hi);
    total += res.value;
    err += res.estimated_error;
  }
  const double z = polar_normalization(a);
  out.value = total / z;
  out.estimated_error = err / z;
  return out;
}

namespace {

double log_average(const AxisymmetricField& w, double k, double r, const QuadratureRule<double>& rule) {
  std::vector<double> lv(rule.size());
  double m = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < rule.size(); ++i) {
    lv[i] = k * w(r, rule.nodes[i]);
    m = std::max(m, lv[i]);
  }
  if (!std::isfinite(m)) return m;
  double acc = 0.0;
  for (int i = 0; i < rule.size(); ++i) acc += rule.weights[i] * std::exp(lv[i] - m);
  return m + std::log(acc);
}

}  // namespace

double log_axisym_sphere_average(const AxisymmetricField& w, double k, double r, Dimension n,
                                 const QuadratureSpec& spec) {
  spec.validate();
  if (!(k > 0.0)) throw ConfigError("axisym_sphere_average: k must be positive");
  if (!(r > 0.0)) throw ConfigError("axisym_sphere_average: r must be positive");
  return log_average(w, k, r, gauss_jacobi_rule(spec.angular_nodes, 0.5 * (n - 3)));
}

SphereAverage axisym_sphere_average(const AxisymmetricField& w, double k, double r, Dimension n,
                                    const QuadratureSpec& spec) {
  const double lf = log_axisym_sphere_average(w, k, r, n, spec);
  const double lc = log_average(w, k, r, gauss_jacobi_rule(std::max(8, spec.angular_nodes / 2), 0.5 * (n - 3)));
  SphereAverage out;
  out.value = std::exp(lf);
  out.estimated_error = out.value * std::abs(std::expm1(lc - lf));
  return out;
}

SphereAverage axisym_sphere_mean(const AxisymmetricField& w, double r, Dimension n, const QuadratureSpec& spec) {
  spec.validate();
  if (!(r > 0.0)) throw ConfigError("axisym_sphere_mean: r must be positive");
  const auto& rule = gauss_jacobi_rule(spec.angular_nodes, 0.5 * (n - 3));
  const auto& coarse = gauss_jacobi_rule(std::max(8, spec.angular_nodes / 2), 0.5 * (n - 3));
  double fine = 0.0, rough = 0.0;
  for (int i = 0; i < rule.size(); ++i) fine += rule.weights[i] * w(r, rule.nodes[i]);
  for (int i = 0; i < coarse.size(); ++i) rough += coarse.weights[i] * w(r, coarse.nodes[i]);
  return {fine, std::abs(fine - rough)};
}

}  // namespace qgb
