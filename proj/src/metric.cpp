#include "qgb/metrics/metric.hpp"

#include <algorithm>
#include <cmath>

#include "qgb/curvature/constants.hpp"

namespace qgb {

ConformalMetric ConformalMetric::radial(Dimension n, RadialExpression w, std::string provenance) {
  ConformalMetric m(n);
  m.kind_ = FactorKind::radial;
  m.provenance_ = std::move(provenance);
  m.q_closure_ = std::make_shared<const RadialExpression>(w.polyharmonic(n, n.half()) * 0.5);
  m.drdr_closure_ = std::make_shared<const RadialExpression>(w.r_d_dr());
  m.lap_closure_ = std::make_shared<const RadialExpression>(w.laplacian(n));
  m.closure_ = std::move(w);
  return m;
}

ConformalMetric ConformalMetric::axisymmetric(Dimension n, AxisymmetricField w, std::string provenance) {
  ConformalMetric m(n);
  m.kind_ = FactorKind::axisymmetric;
  m.provenance_ = std::move(provenance);
  m.field_ = std::move(w);
  return m;
}

ConformalMetric ConformalMetric::kernel_defined(QDensity F, double alpha, double C, const QuadratureSpec& spec) {
  spec.validate();
  ConformalMetric m(F.dimension());
  m.kind_ = FactorKind::kernel_defined;
  m.alpha_ = alpha;
  m.offset_ = C;
  m.spec_ = spec;
  m.provenance_ = "normal(" + F.label() + ", alpha=" + std::to_string(alpha) + ", C=" + std::to_string(C) + ")";
  const double gamma = constants(F.dimension()).gamma;
  if (!(F.mass() / gamma - alpha < 1.0))
    m.warnings_.push_back("completeness at infinity fails: mass/gamma - alpha >= 1");
  if (F.is_radial()) {
    m.radial_pot_ = std::make_shared<const RadialLogPotential>(F, spec);
  } else {
    m.axi_pot_ = std::make_shared<const AxisymmetricLogPotential>(F, spec);
  }
  m.density_ = std::make_shared<const QDensity>(std::move(F));
  return m;
}

bool ConformalMetric::is_radial() const {
  return kind_ == FactorKind::radial || (kind_ == FactorKind::kernel_defined && radial_pot_ != nullptr);
}

double ConformalMetric::w(double r) const {
  if (!(r > 0.0)) throw ConfigError("conformal factor: r must be positive (r = 0 is the singular point)");
  switch (kind_) {
    case FactorKind::radial: return (*closure_)(r);
    case FactorKind::kernel_defined:
      if (radial_pot_) return radial_pot_->value(r) + alpha_ * std::log(r) + offset_;
      break;
    case FactorKind::axisymmetric: break;
  }
  throw ConfigError("conformal factor: metric '" + provenance_ + "' is not radial, an angle is required");
}

double ConformalMetric::w(double r, double u) const {
  if (!(r > 0.0)) throw ConfigError("conformal factor: r must be positive (r = 0 is the singular point)");
  if (is_radial()) return w(r);
  if (kind_ == FactorKind::axisymmetric) return field_(r, u) + shift_;
  return axi_pot_->value(r, u) + alpha_ * std::log(r) + offset_;
}

double ConformalMetric::r_dw_dr(double r) const {
  if (!is_radial()) throw ConfigError("r dw/dr: metric is not radial");
  if (kind_ == FactorKind::radial) return (*drdr_closure_)(r);
  return radial_pot_->r_derivative(r) + alpha_;
}

double ConformalMetric::laplacian_w(double r) const {
  if (!is_radial()) throw ConfigError("Laplacian of w: metric is not radial");
  if (kind_ == FactorKind::radial) return (*lap_closure_)(r);
  return radial_pot_->laplacian(r) + alpha_ * (n_ - 2.0) / (r * r);
}

double ConformalMetric::q_density(double r) const {
  if (!is_radial()) throw ConfigError("Q density: metric is not radial");
  if (kind_ == FactorKind::radial) return (*q_closure_)(r);
  return (*density_)(r);
}

ConformalMetric ConformalMetric::shifted(double c) const {
  ConformalMetric m = *this;
  m.provenance_ = provenance_ + " + " + std::to_string(c);
  switch (kind_) {
    case FactorKind::radial: {
      RadialExpression w = *closure_ + RadialExpression::constant(c);
      m.closure_ = w;
      break;
    }
    case FactorKind::kernel_defined: m.offset_ += c; break;
    case FactorKind::axisymmetric: m.shift_ += c; break;
  }
  return m;
}

ConformalMetric ConformalMetric::averaged() const {
  if (is_radial()) return *this;
  if (kind_ == FactorKind::kernel_defined) {
    ConformalMetric m = kernel_defined(density_->spherical_mean(), alpha_, offset_, spec_);
    m.provenance_ = "average of " + provenance_;
    return m;
  }
  throw ConfigError("averaged metric: sampled axisymmetric fields have no radial closure, use symmetrize");
}

ConformalMetric catalog(const std::string& name, Dimension n, const std::vector<double>& params) {
  auto expect = [&](std::size_t count) {
    if (params.size() != count)
      throw ConfigError("catalog metric '" + name + "' takes " + std::to_string(count) + " parameter(s)");
  };
  if (name == "flat") {
    expect(0);
    return ConformalMetric::radial(n, RadialExpression(), "flat");
  }
  if (name == "cone") {
    expect(1);
    const double alpha = params[0];
    if (!(alpha > -1.0))
      throw ConfigError("cone metric requires alpha > -1 (alpha <= -1 has infinite area over the origin)");
    return ConformalMetric::radial(n, RadialExpression::log_r(alpha), "cone(alpha=" + std::to_string(alpha) + ")");
  }
  if (name == "sphere") {
    expect(0);
    return ConformalMetric::radial(n, RadialExpression::constant(std::log(2.0)) - RadialExpression::log_shifted(),
                                   "sphere");
  }
  if (name == "counterexample") {
    expect(0);
    return ConformalMetric::radial(n, RadialExpression::power(2.0), "counterexample");
  }
  if (name == "cylinder") {
    expect(0);
    return ConformalMetric::radial(n, RadialExpression::log_r(-1.0), "cylinder");
  }
  throw ConfigError("unknown catalog metric '" + name + "'");
}

ConformalMetric construct_normal(QDensity F, double alpha, double C, const QuadratureSpec& spec) {
  return ConformalMetric::kernel_defined(std::move(F), alpha, C, spec);
}

double evaluate_w(const ConformalMetric& m, double r, std::optional<double> theta) {
  if (!(r > 0.0)) throw ConfigError("evaluate_w: r must be positive (r = 0 is the singular point)");
  if (theta) return m.w(r, std::cos(*theta));
  return m.is_radial() ? m.w(r) : m.w(r, 1.0);
}

RadialProfile<double> symmetrize(const ConformalMetric& m, SymmetrizationCenter x0, const RadialGrid<double>& grid,
                                 const QuadratureSpec& spec) {
  const Dimension n = m.dimension();
  ArrayX<double> v(grid.size());
  if (m.is_radial()) {
    const double c = std::hypot(x0.axial, x0.transverse);
    if (c == 0.0) {
      if (m.closure()) return RadialProfile<double>::sample(grid, *m.closure());
      for (int i = 0; i < grid.size(); ++i) v(i) = m.w(grid.r(i));
      return RadialProfile<double>(grid, std::move(v));
    }
    const DistanceKernel wk{"w", [&m](double d) { return m.w(d); }};
    for (int i = 0; i < grid.size(); ++i) v(i) = average_radial_kernel(wk, grid.r(i), c, n, spec).value;
    return RadialProfile<double>(grid, std::move(v));
  }
  if (x0.transverse != 0.0)
    throw ConfigError("symmetrize: centre off the symmetry axis needs the full field, not supported");
  const double a = x0.axial;
  for (int i = 0; i < grid.size(); ++i) {
    const double rho = grid.r(i);
    const AxisymmetricField shifted = [&m, a](double radius, double u) {
      const double re2 = a * a + radius * radius + 2.0 * a * radius * u;
      const double re = std::sqrt(std::max(re2, 0.0));
      return m.w(re, std::clamp((a + radius * u) / re, -1.0, 1.0));
    };
    v(i) = axisym_sphere_mean(shifted, rho, n, spec).value;
  }
  return RadialProfile<double>(grid, std::move(v));
}

}  // namespace qgb
