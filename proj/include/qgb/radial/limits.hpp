#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "qgb/radial/differentiation.hpp"

namespace qgb {

enum class LimitBehavior { finite, diverges_up, diverges_down, unsettled };

struct LimitEstimate {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
  LimitBehavior behavior = LimitBehavior::unsettled;
  std::vector<std::pair<double, double>> sequence;  // (r, value), ordered towards the end
};

enum class End { zero, infinity };

struct EndLimits {
  LimitEstimate at_zero;
  LimitEstimate at_infinity;
};

/** Samples per end used by the limit extractors. */
inline constexpr int limit_samples = 12;

/**
 * Extrapolates the limit of a sequence ordered towards the end (values
 * approach the limit geometrically). Uses iterated Aitken transforms and
 * keeps the level whose last two members agree best; diverging sequences are
 * reported with value +-inf.
 */
LimitEstimate extrapolate_limit(std::vector<std::pair<double, double>> sequence, double tol);

/**
 * Limit of f(r) as r tends to the chosen end, sampled at the 12 radii
 * edge * ratio^{k} (zero end) or edge * ratio^{-k} (infinity end), k = 11..0,
 * so the last sample is the edge.
 */
LimitEstimate end_limit(const std::function<double(double)>& f, double edge, End end, double tol,
                        double ratio = 1.7782794100389228);

/** Limits of r dp/dr at both ends of the grid (p spanning >= 6 decades). */
template <typename Scalar>
EndLimits r_dwdr_limits(const RadialProfile<Scalar>& p, double tol = 1e-9) {
  if (p.grid().decades() < 6.0 - 1e-9) throw ConfigError("r_dwdr_limits: grid must span at least 6 decades");
  EndLimits out;
  if (p.has_closure()) {
    const RadialExpression d = p.closure()->r_d_dr();
    auto f = [&d](double r) { return d(r); };
    out.at_zero = end_limit(f, static_cast<double>(p.grid().r_min()), End::zero, tol);
    out.at_infinity = end_limit(f, static_cast<double>(p.grid().r_max()), End::infinity, tol);
    return out;
  }
  const RadialProfile<Scalar> d = r_d_dr(p);
  const TrustedRange t = d.trusted();
  const double h = static_cast<double>(p.grid().spacing());
  int step = std::max(1, static_cast<int>(std::lround(std::log(1.7782794100389228) / h)));
  step = std::min(step, std::max(1, (t.size() - 1) / (2 * (limit_samples - 1))));
  if (t.size() < 2 * limit_samples) throw NumericalError("r_dwdr_limits: trusted range too short");
  std::vector<std::pair<double, double>> lo, hi;
  for (int k = limit_samples - 1; k >= 0; --k) {
    const int i0 = t.first + k * step;
    const int i1 = t.last - k * step;
    lo.emplace_back(static_cast<double>(p.grid().r(i0)), static_cast<double>(d.value(i0)));
    hi.emplace_back(static_cast<double>(p.grid().r(i1)), static_cast<double>(d.value(i1)));
  }
  out.at_zero = extrapolate_limit(std::move(lo), tol);
  out.at_infinity = extrapolate_limit(std::move(hi), tol);
  return out;
}

}  // namespace qgb
