#pragma once

#include <string>

#include "qgb/dimension.hpp"

namespace qgb {

struct QuadratureSpec {
  int angular_nodes = 64;    // Gauss–Jacobi order for the polar weight sin^{n-2}
  int radial_nodes = 24;     // Gauss–Legendre points per radial panel
  double r_lo = 1e-6;        // radial truncation
  double r_hi = 1e6;
  int azimuthal_nodes = 24;  // second angle for axisymmetric fields off the axis

  void validate() const {
    if (angular_nodes < 8 || radial_nodes < 8 || azimuthal_nodes < 8)
      throw ConfigError("quadrature spec: all node counts must be >= 8");
    if (!(r_lo > 0.0)) throw ConfigError("quadrature spec: r_lo must be positive");
    if (!(r_hi > r_lo)) throw ConfigError("quadrature spec: r_hi must exceed r_lo");
  }
};

struct SphereAverage {
  double value = 0.0;
  double estimated_error = 0.0;
};

}  // namespace qgb
