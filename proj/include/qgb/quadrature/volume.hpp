#pragma once

#include <functional>
#include <limits>

#include "qgb/quadrature/spec.hpp"

namespace qgb {

struct VolumeIntegral {
  double value = 0.0;  // +inf when divergent
  double estimated_error = 0.0;
  double absolute = 0.0;  // sigma_n int |f| s^{n-1} ds
  bool divergent = false;
};

/**
 * sigma_n int_lo^hi f(s) s^{n-1} ds with Gauss–Legendre panels in t = log s,
 * bisected adaptively. lo = 0 or hi = +inf extend the range by slabs in t
 * until the slab contributions are negligible; slabs that stop shrinking
 * flag the integral as divergent.
 */
VolumeIntegral radial_volume_integral(const std::function<double(double)>& f, Dimension n, const QuadratureSpec& spec,
                                      double lo, double hi);

/** Same over the truncation range [spec.r_lo, spec.r_hi]. */
VolumeIntegral radial_volume_integral(const std::function<double(double)>& f, Dimension n, const QuadratureSpec& spec);

struct LogVolumeIntegral {
  double log_value = -std::numeric_limits<double>::infinity();  // +inf when divergent
  double relative_error = 0.0;
  bool divergent = false;
};

/**
 * log( sigma_n int_lo^hi e^{log_f(s)} s^{n-1} ds ) for positive integrands
 * that may overflow double precision.
 */
LogVolumeIntegral log_radial_volume_integral(const std::function<double(double)>& log_f, Dimension n,
                                             const QuadratureSpec& spec, double lo, double hi);

/** log(e^a + e^b) without overflow. */
double log_add(double a, double b);

}  // namespace qgb
