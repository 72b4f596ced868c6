#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "qgb/quadrature/spec.hpp"
#include "qgb/radial/expression.hpp"

namespace qgb {

/** One Gaussian bump A exp(-|y|^2 / (2 width^2)) carrying mass_multiple * gamma_n. */
struct GaussianComponent {
  double mass_multiple;
  double width = 1.0;
};

/**
 * The density F(y) = Q e^{nw}: radial, or axisymmetric F(s, cos(theta)).
 * The cached mass is computed with the radial panel layout that the kernel
 * integrals use, so potentials and masses are quadrature-consistent.
 */
class QDensity {
 public:
  struct Panel {
    double a, b;
    bool logarithmic;  // Gauss–Legendre in log s instead of s
  };

  static QDensity zero(Dimension n);
  static QDensity gaussian(Dimension n, double mass_multiple, double width = 1.0);
  static QDensity gaussian_mixture(Dimension n, std::vector<GaussianComponent> components);
  /** Density given by an exact radial expression, supported on (0, inf). */
  static QDensity from_expression(Dimension n, RadialExpression f, std::string label,
                                  const QuadratureSpec& spec = {});
  /**
   * Gaussian radial profile times a smooth angular cap
   * phi(theta) = exp(1 - 1 / (1 - (theta / cap_angle)^2)) for theta < cap_angle.
   */
  static QDensity capped_gaussian(Dimension n, double mass_multiple, double cap_angle,
                                  const QuadratureSpec& spec = {});

  Dimension dimension() const { return n_; }
  bool is_radial() const { return !angular_; }
  bool is_zero() const { return zero_; }
  const std::string& label() const { return label_; }

  /** Radial value; for axisymmetric densities the sphere mean of F at |y| = s. */
  double operator()(double s) const;
  /** Full value at |y| = s with cos(theta) = u. */
  double operator()(double s, double u) const;

  /** Angular factor of an axisymmetric density (1 for radial ones). */
  double angular_factor(double u) const { return angular_ ? angular_(u) : 1.0; }
  /** Radial profile g with F(s, u) = g(s) * angular_factor(u). */
  double radial_factor(double s) const { return radial_(s); }
  /** Sphere mean of the angular factor under the spec's polar rule. */
  double angular_mean() const { return angular_mean_; }

  double mass() const { return mass_; }
  double mass_error() const { return mass_error_; }
  double abs_mass() const { return abs_mass_; }
  /** Requested mass / gamma_n for constructed densities, NaN otherwise. */
  double target_mass_multiple() const { return target_; }

  /** Panels covering the support for outer radial integrals. */
  const std::vector<Panel>& panels() const { return panels_; }

  /** Radial density g(s) * mean(angular factor): the sphere average of F. */
  QDensity spherical_mean() const;

  /** The same density with a different panel layout / quadrature (recomputes the mass). */
  void recompute_mass(const QuadratureSpec& spec);

 private:
  explicit QDensity(Dimension n) : n_(n) {}
  void finish(const QuadratureSpec& spec);

  Dimension n_;
  std::string label_;
  bool zero_ = false;
  std::function<double(double)> radial_;
  std::function<double(double)> angular_;
  double angular_mean_ = 1.0;
  std::vector<Panel> panels_;
  double mass_ = 0.0, mass_error_ = 0.0, abs_mass_ = 0.0;
  double target_ = std::numeric_limits<double>::quiet_NaN();
};

/** Gauss–Legendre nodes and weights (including s^{n-1} sigma_n Jacobian) over a set of panels. */
struct RadialNodes {
  std::vector<double> s;
  std::vector<double> weight;  // sigma_n s^{n-1} ds quadrature weight
};

RadialNodes panel_nodes(const std::vector<QDensity::Panel>& panels, Dimension n, int per_panel);

}  // namespace qgb
