#include "qgb/kernel/kernel.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "qgb/curvature/constants.hpp"

namespace qgb {

KernelKind parse_kernel_kind(const std::string& name) {
  if (name == "I") return KernelKind::I;
  if (name == "J") return KernelKind::J;
  if (name == "K") return KernelKind::K;
  if (name == "L") return KernelKind::L;
  throw ConfigError("unknown kernel '" + name + "' (expected I, J, K or L)");
}

std::string to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::I: return "I";
    case KernelKind::J: return "J";
    case KernelKind::K: return "K";
    case KernelKind::L: return "L";
  }
  return "?";
}

KernelValue kernel_integral(KernelKind kind, double r, double s, Dimension n, const QuadratureSpec& spec) {
  if (!(r > 0.0 && s > 0.0)) throw ConfigError("kernel_integral: r and s must be positive");
  KernelValue out;
  const double nd = n;
  DistanceKernel k;
  switch (kind) {
    case KernelKind::I: k = {"I", [nd](double d) { return std::pow(d, 2.0 - nd); }}; break;
    case KernelKind::J: k = {"J", [](double d) { return 1.0 / (d * d); }}; break;
    case KernelKind::K: {
      const double c = std::abs(r * r - s * s);
      k = {"K", [c](double d) { return c / (d * d); }};
      break;
    }
    case KernelKind::L:
      k = {"L", [s](double d) { return std::log(s / d); }};
      if (s < 0.5 * r || s > 1.5 * r) {
        out.bound_guaranteed = false;
        out.flag = "bound not guaranteed: s outside [r/2, 3r/2]";
      }
      break;
  }
  const auto avg = average_radial_kernel(k, r, s, n, spec);
  out.value = avg.value;
  out.estimated_error = avg.estimated_error;
  return out;
}

LogKernelField::LogKernelField(const QDensity& F, double alpha, const QuadratureSpec& spec)
    : n_(F.dimension()), alpha_(alpha), pot_(F.is_radial() ? F : F.spherical_mean(), spec) {}

double LogKernelField::mass_over_gamma() const { return pot_.mass() / constants(n_).gamma; }

double f_alpha(const QDensity& F, double alpha, double r, const QuadratureSpec& spec) {
  if (!(r > 0.0)) throw ConfigError("f_alpha: r must be positive");
  return LogKernelField(F, alpha, spec).value(r);
}

KernelLimits limit_difference(const QDensity& F, double alpha, const QuadratureSpec& spec, double r_zero,
                              double r_infinity, double tol) {
  const LogKernelField f(F, alpha, spec);
  auto d = [&f](double r) { return f.r_derivative(r); };
  KernelLimits out;
  out.limit_at_zero = end_limit(d, r_zero, End::zero, tol);
  out.limit_at_infinity = end_limit(d, r_infinity, End::infinity, tol);
  out.difference = out.limit_at_infinity.value - out.limit_at_zero.value;
  return out;
}

GrowthBounds growth_bounds(const QDensity& F, double alpha, const RadialGrid<double>& grid,
                           const QuadratureSpec& spec) {
  const LogKernelField f(F, alpha, spec);
  GrowthBounds b;
  for (int i = 0; i < grid.size(); ++i) {
    const double r = grid.r(i);
    b.sup_r_gradient = std::max(b.sup_r_gradient, std::abs(f.r_derivative(r)));
    b.sup_r2_laplacian = std::max(b.sup_r2_laplacian, r * r * std::abs(f.laplacian(r)));
  }
  return b;
}

QDensity density_of(const ConformalMetric& m, const QuadratureSpec& spec) {
  if (m.kind() == FactorKind::kernel_defined) return *m.density();
  if (!m.closure()) throw ConfigError("density of metric '" + m.provenance() + "': no radial closure");
  const Dimension n = m.dimension();
  const RadialExpression q = m.closure()->polyharmonic(n, n.half()) * 0.5;
  if (q.is_zero()) return QDensity::zero(n);
  return QDensity::from_expression(n, q, "Q e^{nw} of " + m.provenance(), spec);
}

RadialGrid<double> reconstruction_grid() { return build_log_grid(1e-3, 1e3, 61); }

ConstancyReport reconstruct(const ConformalMetric& m, std::optional<double> alpha_hint, const QuadratureSpec& spec) {
  return reconstruct(m, alpha_hint, spec, reconstruction_grid());
}

ConstancyReport reconstruct(const ConformalMetric& m, std::optional<double> alpha_hint, const QuadratureSpec& spec,
                            const RadialGrid<double>& grid) {
  if (!m.is_radial())
    throw ConfigError("reconstruct: metric '" + m.provenance() + "' is not radial; reconstruct its averaged metric");
  const QDensity F = density_of(m, spec);
  const RadialLogPotential v(F, spec);
  ConstancyReport rep;
  rep.total_q_over_gamma = F.mass() / constants(m.dimension()).gamma;

  const int count = grid.size();
  std::vector<double> slope(3);
  for (int i = 0; i < 3; ++i) slope[i] = m.r_dw_dr(grid.r(i)) - v.r_derivative(grid.r(i));
  std::sort(slope.begin(), slope.end());
  rep.alpha_from_limit = slope[1];

  Eigen::MatrixXd A(count, 2);
  Eigen::VectorXd b(count);
  for (int i = 0; i < count; ++i) {
    const double r = grid.r(i);
    rep.radii.push_back(r);
    rep.w_minus_v.push_back(m.w(r) - v.value(r));
    A(i, 0) = std::log(r);
    A(i, 1) = 1.0;
    b(i) = rep.w_minus_v.back();
  }
  const Eigen::Vector2d x = A.colPivHouseholderQr().solve(b);
  rep.alpha = x(0);
  rep.C = x(1);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int i = 0; i < count; ++i) {
    const double e = rep.w_minus_v[i] - rep.alpha * A(i, 0);
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  rep.residual = hi - lo;
  if (std::abs(rep.alpha - rep.alpha_from_limit) > 1e-6)
    rep.notes.push_back("slope at the origin differs from the fitted alpha: w - v is not alpha log r + C");
  if (alpha_hint && std::abs(*alpha_hint - rep.alpha) > 1e-6)
    rep.notes.push_back("fitted alpha differs from the hint " + std::to_string(*alpha_hint));
  return rep;
}

}  // namespace qgb
