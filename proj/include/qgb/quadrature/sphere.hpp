#pragma once

#include <functional>
#include <string>

#include "qgb/quadrature/spec.hpp"

namespace qgb {

/** A scalar function of the distance |x - y| with a name used in diagnostics. */
struct DistanceKernel {
  std::string name;
  std::function<double(double)> f;
};

/**
 * Mean of f(|x - y|) over x on the sphere |x| = r with |y| = s, i.e.
 *   int_0^pi f(sqrt(r^2 + s^2 - 2 r s cos t)) sin^{n-2} t dt / int_0^pi sin^{n-2} t dt.
 * Gauss–Jacobi in u = cos t away from the diagonal; graded tanh-sinh panels
 * in v = 1 - u when r and s are close.
 */
SphereAverage average_radial_kernel(const DistanceKernel& f, double r, double s, Dimension n,
                                    const QuadratureSpec& spec);

/** An axisymmetric field w(r, cos(theta)), theta measured from the symmetry axis. */
using AxisymmetricField = std::function<double(double r, double cos_theta)>;

/** Mean of e^{k w} over the sphere of radius r, evaluated with a shifted exponent. */
SphereAverage axisym_sphere_average(const AxisymmetricField& w, double k, double r, Dimension n,
                                    const QuadratureSpec& spec);

/** log of the mean of e^{k w}; stays finite when the mean itself overflows. */
double log_axisym_sphere_average(const AxisymmetricField& w, double k, double r, Dimension n,
                                 const QuadratureSpec& spec);

/** Mean of a field over the sphere of radius r (no exponential). */
SphereAverage axisym_sphere_mean(const AxisymmetricField& w, double r, Dimension n, const QuadratureSpec& spec);

}  // namespace qgb
