#include "qgb/curvature/curvature.hpp"

#include <cmath>

#include "qgb/quadrature/volume.hpp"

namespace qgb {

namespace {

void require_radial(const ConformalMetric& m, const char* what) {
  if (!m.is_radial())
    throw ConfigError(std::string(what) + ": metric '" + m.provenance() +
                      "' is not radial; use total_q or the averaged metric");
}

double q_from_density(double qd, double w, int n) { return qd == 0.0 ? 0.0 : qd * std::exp(-n * w); }

// bracket B with R = -2(n-1) B e^{-2w}, and its magnitude scale
std::pair<double, double> scalar_bracket(const ConformalMetric& m, double r) {
  const double n = m.dimension();
  const double lap = m.laplacian_w(r), g = m.r_dw_dr(r) / r;
  const double grad2 = (0.5 * n - 1.0) * g * g;
  return {lap + grad2, std::abs(lap) + grad2};
}

}  // namespace

double scalar_curvature_at(const ConformalMetric& m, double r) {
  require_radial(m, "scalar curvature");
  const double n = m.dimension();
  const double b = scalar_bracket(m, r).first;
  return b == 0.0 ? 0.0 : -2.0 * (n - 1.0) * b * std::exp(-2.0 * m.w(r));
}

CurvatureField q_curvature(const ConformalMetric& m, const RadialGrid<double>& grid, const DifferentiationOptions& opt) {
  require_radial(m, "q_curvature");
  const Dimension n = m.dimension();
  CurvatureField c{grid, ArrayX<double>::Zero(grid.size()), ArrayX<double>::Zero(grid.size()),
                   ArrayX<double>::Zero(grid.size()), TrustedRange{0, grid.size() - 1}};
  if (opt.route == Route::automatic && (m.closure() || m.kind() == FactorKind::kernel_defined)) {
    for (int i = 0; i < grid.size(); ++i) {
      c.q_density(i) = m.q_density(grid.r(i));
      c.Q(i) = q_from_density(c.q_density(i), m.w(grid.r(i)), n);
    }
    return c;
  }
  const auto w = RadialProfile<double>::tabulate(grid, [&m](double r) { return m.w(r); });
  const auto img = polyharmonic(w, n, n.half(), opt);
  c.trusted = img.trusted();
  for (int i = c.trusted.first; i <= c.trusted.last; ++i) {
    c.q_density(i) = 0.5 * img[i];
    c.Q(i) = q_from_density(c.q_density(i), w[i], n);
  }
  return c;
}

CurvatureField scalar_curvature(const ConformalMetric& m, const RadialGrid<double>& grid,
                                const DifferentiationOptions& opt) {
  require_radial(m, "scalar_curvature");
  const double n = m.dimension();
  CurvatureField c{grid, ArrayX<double>::Zero(grid.size()), ArrayX<double>::Zero(grid.size()),
                   ArrayX<double>::Zero(grid.size()), TrustedRange{0, grid.size() - 1}};
  if (opt.route == Route::automatic && (m.closure() || m.kind() == FactorKind::kernel_defined)) {
    for (int i = 0; i < grid.size(); ++i) c.R(i) = scalar_curvature_at(m, grid.r(i));
    return c;
  }
  const auto w = RadialProfile<double>::tabulate(grid, [&m](double r) { return m.w(r); });
  const auto lap = radial_laplacian(w, m.dimension(), opt);
  const auto d = r_d_dr(w, opt);
  c.trusted = lap.trusted();
  for (int i = c.trusted.first; i <= c.trusted.last; ++i) {
    const double g = d[i] / grid.r(i);
    const double b = lap[i] + (0.5 * n - 1.0) * g * g;
    c.R(i) = b == 0.0 ? 0.0 : -2.0 * (n - 1.0) * b * std::exp(-2.0 * w[i]);
  }
  return c;
}

TotalQ total_q(const ConformalMetric& m, const QuadratureSpec& spec) {
  TotalQ t;
  if (m.kind() == FactorKind::kernel_defined) {
    t.integral = m.density()->mass();
    t.abs_integral = m.density()->abs_mass();
    t.estimated_error = m.density()->mass_error();
    return t;
  }
  require_radial(m, "total_q");
  const Dimension n = m.dimension();
  const double inf = std::numeric_limits<double>::infinity();
  const auto signed_part = radial_volume_integral([&m](double r) { return m.q_density(r); }, n, spec, 0.0, inf);
  if (signed_part.divergent || !std::isfinite(signed_part.absolute))
    throw DivergenceError("total |Q| diverges for metric '" + m.provenance() + "'; rejected for CGB verification");
  t.integral = signed_part.value;
  t.abs_integral = signed_part.absolute;
  t.estimated_error = signed_part.estimated_error;
  return t;
}

HypothesisVerdict hypothesis_check(const ConformalMetric& m) {
  return hypothesis_check(m, build_log_grid(1e-4, 1e4, 256));
}

HypothesisVerdict hypothesis_check(const ConformalMetric& m, const RadialGrid<double>& grid) {
  require_radial(m, "hypothesis_check");
  HypothesisVerdict v;
  const double n = m.dimension();
  auto tail_ok = [&](double edge, End end) {
    bool ok = true;
    const double ratio = 1.7782794100389228;
    for (int k = 0; k < limit_samples; ++k) {
      const double r = end == End::zero ? edge * std::pow(ratio, k) : edge * std::pow(ratio, -k);
      const auto [b, scale] = scalar_bracket(m, r);
      if (b > 1e-9 * scale) ok = false;
    }
    return ok;
  };
  v.scalar_nonnegative_at_zero = tail_ok(grid.r_min(), End::zero);
  v.scalar_nonnegative_at_infinity = tail_ok(grid.r_max(), End::infinity);
  v.branch_a = v.scalar_nonnegative_at_zero && v.scalar_nonnegative_at_infinity;

  for (int i = 0; i < grid.size(); ++i) {
    const double r = grid.r(i);
    v.sup_r_gradient = std::max(v.sup_r_gradient, std::abs(m.r_dw_dr(r)));
    v.sup_r2_laplacian = std::max(v.sup_r2_laplacian, r * r * std::abs(m.laplacian_w(r)));
  }
  auto bounded = [&](const std::function<double(double)>& f) {
    const auto lo = end_limit(f, grid.r_min(), End::zero, 1e-6);
    const auto hi = end_limit(f, grid.r_max(), End::infinity, 1e-6);
    return lo.converged && hi.converged;
  };
  v.gradient_bounded = bounded([&m](double r) { return std::abs(m.r_dw_dr(r)); });
  v.laplacian_bounded = bounded([&m](double r) { return r * r * std::abs(m.laplacian_w(r)); });
  v.branch_b = v.gradient_bounded && v.laplacian_bounded;

  const auto r_inf =
      end_limit([&m](double r) { return scalar_curvature_at(m, r); }, grid.r_max(), End::infinity, 1e-9);
  v.liminf_scalar_nonnegative = r_inf.converged && r_inf.value >= -1e-9;
  v.liminf_only = v.liminf_scalar_nonnegative && !v.scalar_nonnegative_at_infinity;
  if (v.liminf_only)
    v.notes.push_back("liminf R >= 0 at infinity holds but R < 0 on the tail: insufficient for branch (a)");
  if (!v.gradient_bounded) v.notes.push_back("r |grad w| is unbounded on the tails");
  if (!v.laplacian_bounded) v.notes.push_back("r^2 |Delta w| is unbounded on the tails");
  (void)n;
  return v;
}

}  // namespace qgb
