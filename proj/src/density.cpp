#include "qgb/metrics/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qgb/curvature/constants.hpp"
#include "qgb/quadrature/rules.hpp"
#include "qgb/quadrature/volume.hpp"

namespace qgb {

namespace {

std::vector<QDensity::Panel> gaussian_panels(double w_min, double w_max) {
  std::vector<QDensity::Panel> p;
  const double lo = 1e-8 * w_min;
  const int nlog = static_cast<int>(std::ceil(std::log(w_min / lo)));
  for (int i = 0; i < nlog; ++i) {
    const double a = lo * std::pow(w_min / lo, double(i) / nlog), b = lo * std::pow(w_min / lo, double(i + 1) / nlog);
    p.push_back({a, b, true});
  }
  const double hi = 12.0 * w_max, step = 0.5 * w_min;
  const int nlin = static_cast<int>(std::ceil((hi - w_min) / step));
  for (int i = 0; i < nlin; ++i) p.push_back({w_min + (hi - w_min) * i / nlin, w_min + (hi - w_min) * (i + 1) / nlin, false});
  return p;
}

std::vector<QDensity::Panel> log_panels(double lo, double hi, double width) {
  std::vector<QDensity::Panel> p;
  const int count = static_cast<int>(std::ceil(std::log(hi / lo) / width));
  for (int i = 0; i < count; ++i)
    p.push_back({lo * std::pow(hi / lo, double(i) / count), lo * std::pow(hi / lo, double(i + 1) / count), true});
  return p;
}

}  // namespace

RadialNodes panel_nodes(const std::vector<QDensity::Panel>& panels, Dimension n, int per_panel) {
  const auto& gl = gauss_legendre_rule(per_panel);
  const double sigma = constants(n).sigma;
  RadialNodes out;
  out.s.reserve(panels.size() * per_panel);
  out.weight.reserve(panels.size() * per_panel);
  for (const auto& p : panels) {
    if (p.logarithmic) {
      const double ta = std::log(p.a), tb = std::log(p.b), half = 0.5 * (tb - ta), mid = 0.5 * (ta + tb);
      for (int i = 0; i < gl.size(); ++i) {
        const double s = std::exp(mid + half * gl.nodes[i]);
        out.s.push_back(s);
        out.weight.push_back(sigma * half * gl.weights[i] * std::pow(s, static_cast<int>(n)));
      }
    } else {
      const double half = 0.5 * (p.b - p.a), mid = 0.5 * (p.a + p.b);
      for (int i = 0; i < gl.size(); ++i) {
        const double s = mid + half * gl.nodes[i];
        out.s.push_back(s);
        out.weight.push_back(sigma * half * gl.weights[i] * std::pow(s, static_cast<int>(n) - 1));
      }
    }
  }
  return out;
}

QDensity QDensity::zero(Dimension n) {
  QDensity d(n);
  d.label_ = "zero";
  d.zero_ = true;
  d.radial_ = [](double) { return 0.0; };
  d.target_ = 0.0;
  return d;
}

QDensity QDensity::gaussian(Dimension n, double mass_multiple, double width) {
  QDensity d = gaussian_mixture(n, {{mass_multiple, width}});
  d.label_ = "gaussian(mass=" + std::to_string(mass_multiple) + ", width=" + std::to_string(width) + ")";
  return d;
}

QDensity QDensity::gaussian_mixture(Dimension n, std::vector<GaussianComponent> components) {
  if (components.empty()) return zero(n);
  QDensity d(n);
  const double gamma = constants(n).gamma;
  double wmin = 1e300, wmax = 0.0, total = 0.0;
  std::vector<std::pair<double, double>> terms;  // (amplitude, 1/(2 width^2))
  for (const auto& c : components) {
    if (!(c.width > 0.0)) throw ConfigError("gaussian density: width must be positive");
    wmin = std::min(wmin, c.width);
    wmax = std::max(wmax, c.width);
    total += c.mass_multiple;
    const double amp = c.mass_multiple * gamma / (std::pow(2.0 * std::numbers::pi, n.half()) * std::pow(c.width, static_cast<int>(n)));
    terms.emplace_back(amp, 0.5 / (c.width * c.width));
  }
  d.radial_ = [terms](double s) {
    double v = 0.0;
    for (const auto& [a, k] : terms) v += a * std::exp(-k * s * s);
    return v;
  };
  d.label_ = "gaussian_mixture(" + std::to_string(components.size()) + ")";
  d.target_ = total;
  d.zero_ = std::all_of(components.begin(), components.end(), [](const auto& c) { return c.mass_multiple == 0.0; });
  d.panels_ = gaussian_panels(wmin, wmax);
  d.finish(QuadratureSpec{});
  return d;
}

QDensity QDensity::from_expression(Dimension n, RadialExpression f, std::string label, const QuadratureSpec& spec) {
  spec.validate();
  QDensity d(n);
  d.label_ = std::move(label);
  d.zero_ = f.is_zero();
  d.radial_ = [f](double s) { return f(s); };
  if (!d.zero_) d.panels_ = log_panels(spec.r_lo, spec.r_hi, 0.5);
  d.finish(spec);
  return d;
}

QDensity QDensity::capped_gaussian(Dimension n, double mass_multiple, double cap_angle, const QuadratureSpec& spec) {
  spec.validate();
  if (!(cap_angle > 0.0 && cap_angle <= std::numbers::pi))
    throw ConfigError("capped density: cap angle must lie in (0, pi]");
  QDensity d(n);
  d.angular_ = [cap_angle](double u) {
    const double th = std::acos(std::clamp(u, -1.0, 1.0));
    if (th >= cap_angle) return 0.0;
    const double x = th / cap_angle;
    return std::exp(1.0 - 1.0 / (1.0 - x * x));
  };
  const auto& rule = gauss_jacobi_rule(spec.angular_nodes, 0.5 * (n - 3));
  double mean = 0.0;
  for (int i = 0; i < rule.size(); ++i) mean += rule.weights[i] * d.angular_(rule.nodes[i]);
  d.angular_mean_ = mean;
  const double gamma = constants(n).gamma;
  const double amp = mass_multiple * gamma / (std::pow(2.0 * std::numbers::pi, n.half()) * mean);
  d.radial_ = [amp](double s) { return amp * std::exp(-0.5 * s * s); };
  d.label_ = "capped_gaussian(mass=" + std::to_string(mass_multiple) + ", cap=" + std::to_string(cap_angle) + ")";
  d.target_ = mass_multiple;
  d.zero_ = mass_multiple == 0.0;
  d.panels_ = gaussian_panels(1.0, 1.0);
  d.finish(spec);
  return d;
}

double QDensity::operator()(double s) const { return zero_ ? 0.0 : radial_(s) * angular_mean_; }

double QDensity::operator()(double s, double u) const {
  if (zero_) return 0.0;
  return angular_ ? radial_(s) * angular_(u) : radial_(s);
}

QDensity QDensity::spherical_mean() const {
  if (!angular_) return *this;
  QDensity d = *this;
  const double mean = angular_mean_;
  auto g = radial_;
  d.radial_ = [g, mean](double s) { return mean * g(s); };
  d.angular_ = nullptr;
  d.angular_mean_ = 1.0;
  d.label_ = "mean of " + label_;
  return d;
}

void QDensity::recompute_mass(const QuadratureSpec& spec) { finish(spec); }

void QDensity::finish(const QuadratureSpec& spec) {
  if (zero_) {
    mass_ = mass_error_ = abs_mass_ = 0.0;
    return;
  }
  const RadialNodes nodes = panel_nodes(panels_, n_, spec.radial_nodes);
  double m = 0.0, am = 0.0;
  for (std::size_t i = 0; i < nodes.s.size(); ++i) {
    const double f = (*this)(nodes.s[i]);
    m += nodes.weight[i] * f;
    am += nodes.weight[i] * std::abs(f);
  }
  // independent check with tail extension to (0, inf)
  const auto check = radial_volume_integral([this](double s) { return (*this)(s); }, n_, spec, 0.0,
                                            std::numeric_limits<double>::infinity());
  if (check.divergent) throw DivergenceError("density '" + label_ + "' is not integrable");
  abs_mass_ = am;
  mass_ = m;
  mass_error_ = std::abs(m - check.value) + check.estimated_error;
}

}  // namespace qgb
