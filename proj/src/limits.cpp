#include "qgb/radial/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qgb {

namespace {

bool is_diverging(const std::vector<double>& x, double tol) {
  const int m = static_cast<int>(x.size());
  if (m < 5) return false;
  double scale = 1.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  for (int k = m - 5; k < m - 1; ++k) {
    const double d0 = x[k + 1] - x[k];
    if (d0 == 0.0 || std::abs(d0) < tol) return false;
    if (k > m - 5) {
      const double dprev = x[k] - x[k - 1];
      if ((d0 > 0) != (dprev > 0)) return false;
      if (std::abs(d0) < 0.98 * std::abs(dprev)) return false;
    }
  }
  return std::abs(x.back()) > std::abs(x[m - 5]);
}

}  // namespace

LimitEstimate extrapolate_limit(std::vector<std::pair<double, double>> sequence, double tol) {
  LimitEstimate e;
  e.sequence = std::move(sequence);
  std::vector<double> x;
  x.reserve(e.sequence.size());
  for (const auto& s : e.sequence) x.push_back(s.second);
  if (x.empty()) return e;

  if (!std::isfinite(x.back())) {
    e.value = x.back();
    e.error_estimate = std::numeric_limits<double>::infinity();
    e.behavior = std::signbit(x.back()) ? LimitBehavior::diverges_down : LimitBehavior::diverges_up;
    return e;
  }
  for (double v : x) {
    if (!std::isfinite(v)) {
      e.value = x.back();
      e.error_estimate = std::numeric_limits<double>::infinity();
      return e;
    }
  }
  if (is_diverging(x, tol)) {
    const bool up = x.back() > x.front();
    e.value = up ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    e.error_estimate = std::numeric_limits<double>::infinity();
    e.behavior = up ? LimitBehavior::diverges_up : LimitBehavior::diverges_down;
    return e;
  }

  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  const double floor = 8.0 * std::numeric_limits<double>::epsilon() * std::max(scale, 1e-300);

  std::vector<std::vector<double>> levels{x};
  while (levels.back().size() >= 3) {
    const auto& y = levels.back();
    std::vector<double> z;
    for (std::size_t i = 0; i + 2 < y.size(); ++i) {
      const double d1 = y[i + 2] - y[i + 1];
      const double d2 = y[i + 2] - 2.0 * y[i + 1] + y[i];
      if (std::abs(d2) <= 8.0 * floor)
        z.push_back(y[i + 2]);
      else
        z.push_back(y[i + 2] - d1 * d1 / d2);
    }
    levels.push_back(std::move(z));
  }

  double best = std::numeric_limits<double>::infinity();
  for (const auto& y : levels) {
    if (y.size() < 2) continue;
    const double diff = std::abs(y.back() - y[y.size() - 2]);
    if (diff < best) {
      best = diff;
      e.value = y.back();
    }
  }
  e.error_estimate = std::max(best, floor);
  e.converged = e.error_estimate < tol;
  e.behavior = e.converged ? LimitBehavior::finite : LimitBehavior::unsettled;
  return e;
}

LimitEstimate end_limit(const std::function<double(double)>& f, double edge, End end, double tol,
                        double ratio) {
  std::vector<std::pair<double, double>> seq;
  seq.reserve(limit_samples);
  for (int k = limit_samples - 1; k >= 0; --k) {
    const double r = end == End::zero ? edge * std::pow(ratio, k) : edge * std::pow(ratio, -k);
    seq.emplace_back(r, f(r));
  }
  return extrapolate_limit(std::move(seq), tol);
}

}  // namespace qgb
