#include "qgb/cgb/cgb.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "qgb/parallel.hpp"
#include "qgb/quadrature/volume.hpp"

namespace qgb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRatio = 1.7782794100389228;  // 10^{1/4}

// log of the sphere mean of e^{k w} at radius s
std::function<double(double)> log_sphere_mean(const ConformalMetric& m, double k, const QuadratureSpec& spec) {
  if (m.is_radial()) return [&m, k](double s) { return k * m.w(s); };
  const AxisymmetricField f = [&m](double r, double u) { return m.w(r, u); };
  const Dimension n = m.dimension();
  return [f, k, n, spec](double s) { return log_axisym_sphere_average(f, k, s, n, spec); };
}

void check_radii(const std::vector<double>& r) {
  if (r.empty()) throw ConfigError("mixed volumes: empty radius list");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0) || !std::isfinite(r[i])) throw ConfigError("mixed volumes: radii must be positive and finite");
    if (i > 0 && !(r[i] > r[i - 1])) throw ConfigError("mixed volumes: radii must be strictly increasing");
  }
}

void fill_boundary(MixedVolumes& v, const ConformalMetric& m, const QuadratureSpec& spec) {
  const Dimension n = m.dimension();
  const auto log_mean = log_sphere_mean(m, n - 1.0, spec);
  const double log_c = std::log(constants(n).sigma / n);
  for (double r : v.r) {
    const double lv = log_c + (n - 1.0) * std::log(r) + log_mean(r);
    v.log_V_n_minus_1.push_back(lv);
    v.V_n_minus_1.push_back(std::exp(lv));
  }
  for (double lv : v.log_V_n) v.V_n.push_back(std::exp(lv));
}

double log_piece(const std::function<double(double)>& log_f, Dimension n, const QuadratureSpec& spec, double a,
                 double b) {
  const auto p = log_radial_volume_integral(log_f, n, spec, a, b);
  if (p.divergent) throw DivergenceError("mixed volumes: V_n diverges at the origin; use the annulus variant");
  return p.log_value;
}

LimitEstimate towards(const std::vector<double>& r, const std::vector<double>& c, End end, double R, double tol) {
  std::vector<std::pair<double, double>> seq;
  const std::size_t count = std::min<std::size_t>(limit_samples, r.size());
  if (end == End::zero) {
    for (std::size_t i = count; i-- > 0;)
      if (std::isfinite(c[i])) seq.emplace_back(r[i], c[i]);
  } else {
    for (std::size_t i = r.size() - count; i < r.size(); ++i)
      if (std::isfinite(c[i])) seq.emplace_back(r[i], c[i]);
  }
  if (seq.size() < 4) return LimitEstimate{};
  return series_limit(seq, R, tol);
}

}  // namespace

std::vector<double> series_radii(double lo, double hi) {
  if (!(lo > 0.0 && hi > lo)) throw ConfigError("series radii: need 0 < lo < hi");
  const int steps = static_cast<int>(std::lround(std::log(hi / lo) / std::log(kRatio)));
  std::vector<double> r;
  for (int i = 0; i <= steps; ++i) r.push_back(lo * std::pow(hi / lo, double(i) / steps));
  return r;
}

MixedVolumes mixed_volumes(const ConformalMetric& m, const std::vector<double>& r_list, const QuadratureSpec& spec) {
  check_radii(r_list);
  const Dimension n = m.dimension();
  const auto log_f = log_sphere_mean(m, n, spec);
  MixedVolumes v;
  v.r = r_list;
  std::vector<double> pieces(r_list.size());
  parallel_for(r_list.size(), [&](std::size_t i) {
    pieces[i] = log_piece(log_f, n, spec, i == 0 ? 0.0 : r_list[i - 1], r_list[i]);
  });
  double acc = -kInf;
  for (double p : pieces) {
    acc = log_add(acc, p);
    v.log_V_n.push_back(acc);
  }
  fill_boundary(v, m, spec);
  return v;
}

MixedVolumes annulus_volumes(const ConformalMetric& m, const std::vector<double>& r_list, double R,
                             const QuadratureSpec& spec) {
  check_radii(r_list);
  if (!(R > 0.0)) throw ConfigError("annulus volumes: R must be positive");
  const Dimension n = m.dimension();
  const auto log_f = log_sphere_mean(m, n, spec);
  MixedVolumes v;
  v.r = r_list;
  v.log_V_n.assign(r_list.size(), -kInf);
  const std::size_t split = std::lower_bound(r_list.begin(), r_list.end(), R) - r_list.begin();
  // piece i spans from r_i towards R, up to the neighbouring radius
  std::vector<double> pieces(r_list.size(), -kInf);
  parallel_for(r_list.size(), [&](std::size_t i) {
    const double other = i >= split ? (i == split ? R : r_list[i - 1]) : (i + 1 == split ? R : r_list[i + 1]);
    const double a = std::min(other, r_list[i]), b = std::max(other, r_list[i]);
    if (b > a) pieces[i] = log_piece(log_f, n, spec, a, b);
  });
  double acc = -kInf;
  for (std::size_t i = split; i < r_list.size(); ++i) v.log_V_n[i] = acc = log_add(acc, pieces[i]);
  acc = -kInf;
  for (std::size_t i = split; i-- > 0;) v.log_V_n[i] = acc = log_add(acc, pieces[i]);
  fill_boundary(v, m, spec);
  return v;
}

LimitEstimate series_limit(const std::vector<std::pair<double, double>>& sequence, double R, double tol) {
  LimitEstimate aitken = extrapolate_limit(sequence, tol);
  if (aitken.converged || aitken.behavior == LimitBehavior::diverges_up ||
      aitken.behavior == LimitBehavior::diverges_down)
    return aitken;
  // logarithmic convergence: fit a + b tau + c tau^2 in tau = 1 / |log(r / R)|
  const std::size_t count = std::min<std::size_t>(8, sequence.size());
  if (count < 4 || !(R > 0.0)) return aitken;
  const std::size_t first = sequence.size() - count;
  auto intercept = [&](int degree) {
    Eigen::MatrixXd A(count, degree + 1);
    Eigen::VectorXd b(count);
    for (std::size_t i = 0; i < count; ++i) {
      const double tau = 1.0 / std::abs(std::log(sequence[first + i].first / R));
      for (int d = 0; d <= degree; ++d) A(i, d) = std::pow(tau, d);
      b(i) = sequence[first + i].second;
    }
    return A.colPivHouseholderQr().solve(b)(0);
  };
  const double quadratic = intercept(2), linear = intercept(1);
  const double err = std::abs(quadratic - linear);
  if (!(err < tol)) return aitken;
  LimitEstimate out = aitken;
  out.value = quadratic;
  out.error_estimate = err;
  out.converged = true;
  out.behavior = LimitBehavior::finite;
  return out;
}

IsoperimetricSeries isoperimetric_series(const ConformalMetric& m, IsoVariant variant, const std::vector<double>& r_list,
                                         const QuadratureSpec& spec, double R) {
  check_radii(r_list);
  const Dimension n = m.dimension();
  IsoperimetricSeries s;
  s.variant = variant;
  s.R = R > 0.0 ? R : std::sqrt(r_list.front() * r_list.back());
  const MixedVolumes v =
      variant == IsoVariant::ball ? mixed_volumes(m, r_list, spec) : annulus_volumes(m, r_list, s.R, spec);
  const double log_omega = std::log(constants(n).omega);
  const double e = n / (n - 1.0);
  s.r = r_list;
  for (std::size_t i = 0; i < r_list.size(); ++i) {
    if (v.log_V_n[i] == -kInf) {
      s.C.push_back(std::numeric_limits<double>::quiet_NaN());
      s.diagnostics.push_back("V_n = 0 at r = " + std::to_string(r_list[i]) + ": node skipped");
      continue;
    }
    s.C.push_back(std::exp(e * v.log_V_n_minus_1[i] - log_omega / (n - 1.0) - v.log_V_n[i]));
  }
  const double ref = variant == IsoVariant::ball ? 1.0 : s.R;
  s.at_zero = towards(s.r, s.C, End::zero, ref, 1e-8);
  s.at_infinity = towards(s.r, s.C, End::infinity, ref, 1e-8);
  return s;
}

Topology parse_topology(const std::string& name) {
  if (name == "one_end_one_singularity") return Topology::one_end_one_singularity;
  if (name == "two_ends") return Topology::two_ends;
  throw ConfigError("unknown topology '" + name + "' (expected one_end_one_singularity or two_ends)");
}

std::string to_string(Topology t) {
  return t == Topology::two_ends ? "two_ends" : "one_end_one_singularity";
}

DefectReport defect_report(const ConformalMetric& metric, const DefectOptions& options, const QuadratureSpec& spec) {
  spec.validate();
  DefectReport rep;
  rep.n = metric.dimension();
  rep.topology = options.topology;
  ConformalMetric m = metric;
  if (!metric.is_radial()) {
    if (metric.kind() != FactorKind::kernel_defined)
      throw ConfigError("defect_report: sampled axisymmetric fields are not supported; construct a normal metric");
    m = metric.averaged();
    rep.diagnostics.push_back("non-radial normal metric: limits taken on the averaged metric");
  }
  const Dimension n = m.dimension();
  const bool closed = m.kind() == FactorKind::radial;
  rep.tolerance = std::isnan(options.tolerance) ? (closed ? 1e-6 : 1e-4) : options.tolerance;
  if (!(rep.tolerance > 0.0)) throw ConfigError("defect_report: tolerance must be positive");
  rep.limit_tolerance = 1e-2 * rep.tolerance;

  const double gamma = constants(n).gamma;
  const TotalQ tq = total_q(m, spec);
  rep.total_q_over_gamma = tq.integral / gamma;
  rep.total_q_error = tq.estimated_error / gamma;
  rep.values["total_abs_q_over_gamma"] = tq.abs_integral / gamma;

  auto slope = [&m](double r) { return m.r_dw_dr(r); };
  const LimitEstimate L = end_limit(slope, spec.r_hi, End::infinity, rep.limit_tolerance);
  const LimitEstimate M = end_limit(slope, spec.r_lo, End::zero, rep.limit_tolerance);
  rep.values["lim_r_dw_dr_infinity"] = L.value;
  rep.values["lim_r_dw_dr_infinity_error"] = L.error_estimate;
  rep.values["lim_r_dw_dr_zero"] = M.value;
  rep.values["lim_r_dw_dr_zero_error"] = M.error_estimate;

  if (M.behavior == LimitBehavior::diverges_up || M.behavior == LimitBehavior::diverges_down || !M.converged) {
    rep.converged = false;
    if (M.behavior == LimitBehavior::diverges_up || M.behavior == LimitBehavior::diverges_down) rep.divergent = true;
    rep.diagnostics.push_back("limit of r dw/dr at the origin did not converge");
  }
  double nu_origin = 0.0;
  if (rep.topology == Topology::one_end_one_singularity) {
    if (M.value + 1.0 <= rep.tolerance)
      throw ConfigError("origin is a complete end (lim r dw/dr + 1 <= 0); use topology two_ends");
    rep.mu.push_back(M.value);
  } else {
    if (M.value + 1.0 > rep.tolerance)
      throw ConfigError("origin has finite area (lim r dw/dr + 1 > 0); use topology one_end_one_singularity");
    nu_origin = -(M.value + 1.0) + 0.0;
  }

  const std::vector<double> radii = series_radii(spec.r_lo, spec.r_hi);
  const double centre = std::sqrt(spec.r_lo * spec.r_hi);
  if (rep.topology == Topology::two_ends) {
    rep.chi = 0;
    rep.volumes = annulus_volumes(m, radii, centre, spec);
  } else {
    rep.chi = 1;
    rep.volumes = mixed_volumes(m, radii, spec);
  }

  // nu at infinity: case analysis on lim r w' + 1
  double nu = 0.0;
  if (L.behavior == LimitBehavior::diverges_up || L.value == kInf) {
    nu = kInf;
    rep.divergent = true;
    rep.diagnostics.push_back("nu diverges: r dw/dr -> +inf at infinity (asymptotic isoperimetric ratio nu = +inf)");
  } else {
    if (!L.converged) {
      rep.converged = false;
      rep.diagnostics.push_back("limit of r dw/dr at infinity did not converge");
    }
    const double s = L.value + 1.0;
    if (s < -rep.tolerance)
      throw ConfigError("end at infinity is not complete (lim r dw/dr + 1 = " + std::to_string(s) +
                        " < 0); a metric closing up at infinity is checked through int Q / gamma = chi(S^n)");
    const std::size_t last = rep.volumes.r.size() - 1;
    const double tail = (rep.volumes.log_V_n[last] - rep.volumes.log_V_n[last - 1]) /
                        std::log(rep.volumes.r[last] / rep.volumes.r[last - 1]);
    rep.values["volume_tail_slope"] = tail;
    if (std::abs(s) <= rep.tolerance && tail < 1e-3) {
      rep.diagnostics.push_back("bounded volume at infinity: nu = 0");
      nu = 0.0;
    } else {
      nu = s;
    }
  }
  rep.nu.push_back(nu);
  if (rep.topology == Topology::two_ends) rep.nu.push_back(nu_origin);

  double sum = 0.0;
  for (double v : rep.nu) sum += v;
  for (double v : rep.mu) sum -= v;
  rep.residual = std::abs(rep.chi - rep.total_q_over_gamma - sum);
  if (std::isnan(rep.residual)) rep.residual = kInf;

  // isoperimetric series as an independent check of the limits
  const double log_omega = std::log(constants(n).omega);
  const double e = n / (n - 1.0);
  auto ratios = [&](const MixedVolumes& v) {
    std::vector<double> c;
    for (std::size_t i = 0; i < v.r.size(); ++i)
      c.push_back(v.log_V_n[i] == -kInf ? std::numeric_limits<double>::quiet_NaN()
                                          : std::exp(e * v.log_V_n_minus_1[i] - log_omega / (n - 1.0) - v.log_V_n[i]));
    return c;
  };
  rep.C = ratios(rep.volumes);
  if (rep.topology == Topology::one_end_one_singularity) {
    const auto inf = towards(radii, rep.C, End::infinity, 1.0, 1e-6);
    const auto zero = towards(radii, rep.C, End::zero, 1.0, 1e-6);
    rep.values["nu_series"] = inf.value;
    rep.values["mu_series"] = zero.value - 1.0;
    if (!rep.divergent && inf.converged && std::abs(inf.value - nu) > 1e-6)
      rep.diagnostics.push_back("isoperimetric series limit at infinity differs from lim r dw/dr + 1");
  } else {
    std::vector<double> Rs = options.R_values;
    if (Rs.empty()) Rs = {0.1 * centre, centre, 10.0 * centre};
    double lo1 = kInf, hi1 = -kInf, lo2 = kInf, hi2 = -kInf;
    for (std::size_t j = 0; j < Rs.size(); ++j) {
      const MixedVolumes v = annulus_volumes(m, radii, Rs[j], spec);
      const auto c = ratios(v);
      const auto inf = towards(radii, c, End::infinity, Rs[j], 1e-6);
      const auto zero = towards(radii, c, End::zero, Rs[j], 1e-6);
      rep.values["nu1_series_R" + std::to_string(j)] = inf.value;
      rep.values["nu2_series_R" + std::to_string(j)] = zero.value;
      rep.values["R" + std::to_string(j)] = Rs[j];
      lo1 = std::min(lo1, inf.value);
      hi1 = std::max(hi1, inf.value);
      lo2 = std::min(lo2, zero.value);
      hi2 = std::max(hi2, zero.value);
      if (!inf.converged || !zero.converged)
        rep.diagnostics.push_back("annulus series limit not settled for R = " + std::to_string(Rs[j]));
    }
    rep.values["R_spread_nu1"] = hi1 - lo1;
    rep.values["R_spread_nu2"] = hi2 - lo2;
  }

  if (m.is_radial()) {
    rep.hypotheses = hypothesis_check(m, build_log_grid(spec.r_lo, spec.r_hi, 12 * 12 + 1));
    if (!rep.hypotheses->holds()) rep.diagnostics.push_back("neither asymptotic hypothesis holds");
    if (!rep.hypotheses->holds() && rep.hypotheses->liminf_only)
      rep.diagnostics.push_back("only liminf R >= 0 at infinity: insufficient for the identity");
  }
  if (rep.topology == Topology::one_end_one_singularity && rep.hypotheses && rep.hypotheses->holds() &&
      std::abs(M.value) <= rep.tolerance)
    rep.fang_holds = rep.chi - rep.total_q_over_gamma >= -rep.tolerance;

  rep.pass = rep.residual < rep.tolerance && rep.converged && !rep.divergent;
  return rep;
}

DefectPiece end_piece(double nu, std::string label) {
  return {PieceKind::end, nu, -(1.0 + nu), std::move(label)};
}

DefectPiece singular_piece(double mu, std::string label) { return {PieceKind::singular, mu, mu, std::move(label)}; }

DefectPiece background_piece() { return {PieceKind::background, 2.0, 2.0, "background"}; }

DefectReport multi_end_aggregate(const std::vector<DefectPiece>& pieces, double total_q_over_gamma, int k, int l,
                                 int n, double tolerance) {
  DefectReport rep;
  rep.n = n;
  rep.chi = 2 - k;
  rep.tolerance = tolerance;
  rep.total_q_over_gamma = total_q_over_gamma;
  int ends = 0, singular = 0, background = 0;
  double from_pieces = 0.0, piece_residual = 0.0;
  for (const auto& p : pieces) {
    switch (p.kind) {
      case PieceKind::end:
        ++ends;
        rep.nu.push_back(p.value);
        from_pieces -= 1.0 + p.value;
        piece_residual = std::max(piece_residual, std::abs(-p.total_q_over_gamma - (1.0 + p.value)));
        break;
      case PieceKind::singular:
        ++singular;
        rep.mu.push_back(p.value);
        from_pieces += p.value;
        piece_residual = std::max(piece_residual, std::abs(-p.total_q_over_gamma + p.value));
        break;
      case PieceKind::background:
        ++background;
        piece_residual = std::max(piece_residual, std::abs(p.total_q_over_gamma - 2.0));
        break;
    }
  }
  if (ends != k || singular != l || background > 1)
    throw ConfigError("multi_end_aggregate: pieces do not match k = " + std::to_string(k) +
                      " ends and l = " + std::to_string(l) + " singular points");
  from_pieces += 2.0;
  double sum = 0.0;
  for (double v : rep.nu) sum += v;
  for (double v : rep.mu) sum -= v;
  rep.residual = std::abs(rep.chi - total_q_over_gamma - sum);
  rep.values["aggregation_residual"] = std::abs(rep.chi - from_pieces - sum);
  rep.values["piece_residual"] = piece_residual;
  rep.values["total_from_pieces"] = from_pieces;
  rep.pass = rep.residual < tolerance && piece_residual < tolerance;
  return rep;
}

AveragingSeries averaging_comparison(const ConformalMetric& m, double k, const std::vector<double>& r_list,
                                     const QuadratureSpec& spec) {
  if (!(k > 0.0)) throw ConfigError("averaging_comparison: k must be positive");
  AveragingSeries out;
  out.k = k;
  out.r = r_list;
  const Dimension n = m.dimension();
  const AxisymmetricField f = [&m](double r, double u) { return m.w(r, u); };
  out.log_ratio.assign(r_list.size(), 0.0);
  if (m.is_radial()) return out;
  parallel_for(r_list.size(), [&](std::size_t i) {
    const double bar = axisym_sphere_mean(f, r_list[i], n, spec).value;
    out.log_ratio[i] = log_axisym_sphere_average(f, k, r_list[i], n, spec) - k * bar;
  });
  return out;
}

}  // namespace qgb
