#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "qgb/metrics/density.hpp"

namespace qgb {

/**
 * Closed forms of the sphere averages, over |x| = r with |y| = s, of
 *   L = log(s / |x - y|),  J = |x - y|^{-2},  K = (r^2 - s^2) |x - y|^{-2}
 * for even n. With rho = min(r, s) / max(r, s) and m = n - 2:
 *   L = [s < r] log(s / r) + sum_{j=1}^{m/2} a_j rho^{2j},
 *   max(r, s)^2 J = sum_{l=0}^{(n-4)/2} b_l rho^{2l}.
 */
class AveragedKernels {
 public:
  explicit AveragedKernels(Dimension n);

  double log_kernel(double r, double s) const;
  double inverse_square(double r, double s) const;
  double signed_k(double r, double s) const;
  /** 1 + K, written to avoid cancellation when s >> r. */
  double one_plus_k(double r, double s) const;

 private:
  double poly_j(double rho2) const;
  double poly_l(double rho2) const;

  Dimension n_;
  std::vector<double> a_;  // coefficient of rho^{2j}, j = 1..m/2
  std::vector<double> b_;  // coefficient of rho^{2l}, l = 0..(n-4)/2
};

/**
 * v(x) = (1/gamma_n) int log(|y| / |x - y|) F(y) dy for a radial density,
 * reduced to one radial integral against the averaged kernels.
 */
class RadialLogPotential {
 public:
  RadialLogPotential(QDensity F, const QuadratureSpec& spec);

  double value(double r) const;
  /** r dv/dr. */
  double r_derivative(double r) const;
  /** Delta v. */
  double laplacian(double r) const;

  const QDensity& density() const { return F_; }
  /** sigma_n int s^{n-1} F ds with the potential's own nodes. */
  double mass() const { return mass_; }

 private:
  template <typename K>
  double integrate(double r, K&& kernel) const;

  QDensity F_;
  AveragedKernels kernels_;
  QuadratureSpec spec_;
  double gamma_;
  RadialNodes nodes_;
  std::vector<double> f_;  // F at nodes
  std::vector<std::size_t> panel_start_;
  double mass_ = 0.0;
};

/**
 * The same potential for an axisymmetric density, by quadrature over
 * (|y|, polar angle of y, azimuth of y relative to x). Values are memoized
 * per (r, cos(theta)).
 */
class AxisymmetricLogPotential {
 public:
  AxisymmetricLogPotential(QDensity F, const QuadratureSpec& spec);

  double value(double r, double cos_theta) const;
  const QDensity& density() const { return F_; }

 private:
  double compute(double r, double u) const;

  QDensity F_;
  QuadratureSpec spec_;
  double gamma_;
  std::vector<QDensity::Panel> panels_;
  std::vector<double> polar_u_, polar_w_, polar_phi_;
  std::vector<double> azim_c_, azim_w_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<double, double>, double> memo_;
};

}  // namespace qgb
