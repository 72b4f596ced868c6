#include "qgb/quadrature/volume.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qgb/curvature/constants.hpp"
#include "qgb/quadrature/rules.hpp"

namespace qgb {

namespace {

constexpr double kTol = 1e-14;
constexpr int kMaxDepth = 48;
constexpr double kSlab = 2.0;
constexpr int kMaxSlabs = 340;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Linear {
  double value = 0.0, abs = 0.0, err = 0.0;
};

Linear gl_linear(const std::function<double(double)>& g, double a, double b, const QuadratureRule<double>& rule) {
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  Linear out;
  for (int i = 0; i < rule.size(); ++i) {
    const double v = g(mid + half * rule.nodes[i]);
    out.value += rule.weights[i] * v;
    out.abs += rule.weights[i] * std::abs(v);
  }
  out.value *= half;
  out.abs *= half;
  return out;
}

// adaptive bisection; panels accepted once their refinement change is below tau
Linear adaptive_linear(const std::function<double(double)>& g, double a, double b, const QuadratureRule<double>& rule) {
  const int start = std::max(1, static_cast<int>(std::ceil(b - a)));
  struct Panel {
    double a, b;
    Linear est;
    int depth;
  };
  std::vector<Panel> work;
  double scale = 0.0;
  for (int i = 0; i < start; ++i) {
    const double pa = a + (b - a) * i / start, pb = a + (b - a) * (i + 1) / start;
    work.push_back({pa, pb, gl_linear(g, pa, pb, rule), 0});
    scale += work.back().est.abs;
  }
  std::vector<Linear> accepted;
  while (!work.empty()) {
    Panel p = work.back();
    work.pop_back();
    const double m = 0.5 * (p.a + p.b);
    const Linear l = gl_linear(g, p.a, m, rule), r = gl_linear(g, m, p.b, rule);
    const double split = l.value + r.value;
    const double diff = std::abs(split - p.est.value);
    scale = std::max(scale, l.abs + r.abs);
    if (diff <= kTol * scale || p.depth >= kMaxDepth || !std::isfinite(split)) {
      accepted.push_back({split, l.abs + r.abs, diff});
    } else {
      work.push_back({p.a, m, l, p.depth + 1});
      work.push_back({m, p.b, r, p.depth + 1});
    }
  }
  Linear total;
  // fixed-order summation from the left end keeps results reproducible
  std::reverse(accepted.begin(), accepted.end());
  for (const auto& q : accepted) {
    total.value += q.value;
    total.abs += q.abs;
    total.err += q.err;
  }
  return total;
}

double gl_log(const std::function<double(double)>& ell, double a, double b, const QuadratureRule<double>& rule) {
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  std::vector<double> v(rule.size());
  double m = -kInf;
  for (int i = 0; i < rule.size(); ++i) {
    v[i] = ell(mid + half * rule.nodes[i]);
    if (std::isnan(v[i])) return std::numeric_limits<double>::quiet_NaN();
    m = std::max(m, v[i]);
  }
  if (m == -kInf) return -kInf;
  if (m == kInf) return kInf;
  double acc = 0.0;
  for (int i = 0; i < rule.size(); ++i) acc += rule.weights[i] * std::exp(v[i] - m);
  return m + std::log(acc * half);
}

struct LogResult {
  double value = -kInf;
  double rel_err = 0.0;
};

LogResult adaptive_log(const std::function<double(double)>& ell, double a, double b, const QuadratureRule<double>& rule) {
  const int start = std::max(1, static_cast<int>(std::ceil(b - a)));
  struct Panel {
    double a, b, est;
    int depth;
  };
  std::vector<Panel> work;
  double ref = -kInf;
  for (int i = 0; i < start; ++i) {
    const double pa = a + (b - a) * i / start, pb = a + (b - a) * (i + 1) / start;
    work.push_back({pa, pb, gl_log(ell, pa, pb, rule), 0});
    ref = std::max(ref, work.back().est);
  }
  std::vector<std::pair<double, double>> accepted;  // (log value, log abs error)
  while (!work.empty()) {
    Panel p = work.back();
    work.pop_back();
    const double m = 0.5 * (p.a + p.b);
    const double l = gl_log(ell, p.a, m, rule), r = gl_log(ell, m, p.b, rule);
    const double split = log_add(l, r);
    ref = std::max(ref, split);
    double log_diff = -kInf;
    if (split > -kInf && p.est > -kInf) {
      const double rel = std::abs(std::expm1(p.est - split));
      log_diff = rel > 0 ? split + std::log(rel) : -kInf;
    } else if (split > -kInf) {
      log_diff = split;
    }
    const bool ok = log_diff <= ref + std::log(kTol) || split == -kInf;
    if (ok || p.depth >= kMaxDepth || !std::isfinite(split)) {
      accepted.emplace_back(split, log_diff);
    } else {
      work.push_back({p.a, m, l, p.depth + 1});
      work.push_back({m, p.b, r, p.depth + 1});
    }
  }
  std::reverse(accepted.begin(), accepted.end());
  LogResult out;
  double lerr = -kInf;
  for (const auto& [v, e] : accepted) {
    out.value = log_add(out.value, v);
    lerr = log_add(lerr, e);
  }
  out.rel_err = out.value > -kInf ? std::exp(lerr - out.value) : 0.0;
  return out;
}

}  // namespace

double log_add(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  if (a == kInf || b == kInf) return kInf;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

VolumeIntegral radial_volume_integral(const std::function<double(double)>& f, Dimension n, const QuadratureSpec& spec) {
  return radial_volume_integral(f, n, spec, spec.r_lo, spec.r_hi);
}

VolumeIntegral radial_volume_integral(const std::function<double(double)>& f, Dimension n, const QuadratureSpec& spec,
                                      double lo, double hi) {
  spec.validate();
  if (!(lo >= 0.0) || !(hi > lo)) throw ConfigError("radial_volume_integral: invalid range");
  const double sigma = constants(n).sigma;
  const auto& rule = gauss_legendre_rule(spec.radial_nodes);
  const double nd = n;
  auto g = [&](double t) {
    const double s = std::exp(t);
    const double v = f(s);
    return v == 0.0 ? 0.0 : sigma * v * std::exp(nd * t);
  };
  const bool open_lo = lo == 0.0, open_hi = std::isinf(hi);
  double a = open_lo ? std::min(spec.r_lo, open_hi ? spec.r_lo : 0.5 * hi) : lo;
  double b = open_hi ? std::max(spec.r_hi, 2.0 * a) : hi;
  VolumeIntegral out;
  const Linear core = adaptive_linear(g, std::log(a), std::log(b), rule);
  out.value = core.value;
  out.absolute = core.abs;
  out.estimated_error = core.err;

  auto extend = [&](double t0, double dir) {
    double prev = kInf;
    int growing = 0, quiet = 0;
    for (int k = 0; k < kMaxSlabs; ++k) {
      const double ta = t0 + dir * kSlab * k, tb = t0 + dir * kSlab * (k + 1);
      const Linear slab = adaptive_linear(g, std::min(ta, tb), std::max(ta, tb), rule);
      out.value += slab.value;
      out.absolute += slab.abs;
      out.estimated_error += slab.err;
      if (!std::isfinite(slab.abs)) return false;
      growing = (slab.abs >= 0.999 * prev && slab.abs > 0.0) ? growing + 1 : 0;
      if (growing >= 6) return false;
      quiet = slab.abs <= 1e-17 * out.absolute ? quiet + 1 : 0;
      if (quiet >= 2) return true;
      prev = slab.abs;
    }
    // range exhausted: use the last slab as the tail estimate
    out.estimated_error += prev;
    return prev <= 1e-10 * out.absolute;
  };
  bool ok = true;
  if (open_lo) ok = extend(std::log(a), -1.0) && ok;
  if (ok && open_hi) ok = extend(std::log(b), 1.0) && ok;
  if (!ok || !std::isfinite(out.value)) {
    out.divergent = true;
    out.value = kInf;
    out.absolute = kInf;
    out.estimated_error = kInf;
  }
  return out;
}

LogVolumeIntegral log_radial_volume_integral(const std::function<double(double)>& log_f, Dimension n,
                                             const QuadratureSpec& spec, double lo, double hi) {
  spec.validate();
  if (!(lo >= 0.0) || !(hi > lo)) throw ConfigError("log_radial_volume_integral: invalid range");
  const double log_sigma = std::log(constants(n).sigma);
  const auto& rule = gauss_legendre_rule(spec.radial_nodes);
  const double nd = n;
  auto ell = [&](double t) { return log_sigma + nd * t + log_f(std::exp(t)); };
  const bool open_lo = lo == 0.0, open_hi = std::isinf(hi);
  double a = open_lo ? std::min(spec.r_lo, open_hi ? spec.r_lo : 0.5 * hi) : lo;
  double b = open_hi ? std::max(spec.r_hi, 2.0 * a) : hi;
  LogVolumeIntegral out;
  const LogResult core = adaptive_log(ell, std::log(a), std::log(b), rule);
  out.log_value = core.value;
  double err_abs_log = core.value + std::log(std::max(core.rel_err, 1e-300));

  auto extend = [&](double t0, double dir) {
    double prev = kInf;
    int growing = 0, quiet = 0;
    for (int k = 0; k < kMaxSlabs; ++k) {
      const double ta = t0 + dir * kSlab * k, tb = t0 + dir * kSlab * (k + 1);
      const LogResult slab = adaptive_log(ell, std::min(ta, tb), std::max(ta, tb), rule);
      if (std::isnan(slab.value) || slab.value == kInf) return false;
      out.log_value = log_add(out.log_value, slab.value);
      growing = (slab.value > -kInf && slab.value >= prev + std::log(0.999)) ? growing + 1 : 0;
      if (growing >= 6) return false;
      quiet = slab.value <= out.log_value + std::log(1e-17) ? quiet + 1 : 0;
      if (quiet >= 2) return true;
      prev = slab.value;
    }
    err_abs_log = log_add(err_abs_log, prev);
    return prev <= out.log_value + std::log(1e-10);
  };
  bool ok = true;
  if (open_lo) ok = extend(std::log(a), -1.0) && ok;
  if (ok && open_hi) ok = extend(std::log(b), 1.0) && ok;
  if (!ok || std::isnan(out.log_value)) {
    out.divergent = true;
    out.log_value = kInf;
    out.relative_error = kInf;
    return out;
  }
  out.relative_error = out.log_value > -kInf ? std::exp(err_abs_log - out.log_value) : 0.0;
  return out;
}

}  // namespace qgb
