#pragma once

#include <cmath>
#include <map>
#include <string>

#include "qgb/dimension.hpp"

namespace qgb {

/**
 * Exact radial function built from the families
 *   c r^p,  c log r,  c u^k,  c log u      with u = 1 + r^2.
 * The set is closed under the radial Laplacian and under r d/dr, which is
 * enough for every catalog conformal factor and the polyharmonic basis.
 */
class RadialExpression {
 public:
  RadialExpression() = default;

  static RadialExpression constant(double c);
  static RadialExpression power(double p, double c = 1.0);
  static RadialExpression log_r(double c = 1.0);
  static RadialExpression shifted_power(int k, double c = 1.0);
  static RadialExpression log_shifted(double c = 1.0);

  RadialExpression& operator+=(const RadialExpression& o);
  RadialExpression& operator*=(double c);
  friend RadialExpression operator+(RadialExpression a, const RadialExpression& b) { return a += b; }
  friend RadialExpression operator-(RadialExpression a, const RadialExpression& b) { return a += b * -1.0; }
  friend RadialExpression operator*(RadialExpression a, double c) { return a *= c; }
  friend RadialExpression operator*(double c, RadialExpression a) { return a *= c; }
  RadialExpression operator-() const { return *this * -1.0; }

  /** d^2/dr^2 + (n-1)/r d/dr. */
  RadialExpression laplacian(Dimension n) const;
  /** (-Delta)^k. */
  RadialExpression polyharmonic(Dimension n, int k) const;
  /** r d/dr. */
  RadialExpression r_d_dr() const;

  bool is_zero() const;
  /** True when the expression contains no u = 1 + r^2 terms. */
  bool is_power_log() const { return shifted_.empty() && log_u_ == 0.0; }
  std::string to_string() const;

  const std::map<double, double>& powers() const { return powers_; }
  double log_r_coefficient() const { return log_r_; }
  const std::map<int, double>& shifted_powers() const { return shifted_; }
  double log_shifted_coefficient() const { return log_u_; }

  template <typename Scalar>
  Scalar operator()(Scalar r) const {
    using std::log;
    using std::pow;
    Scalar v(0);
    for (const auto& [p, c] : powers_) v += (p == 0.0) ? Scalar(c) : Scalar(c) * pow(r, Scalar(p));
    if (log_r_ != 0.0) v += Scalar(log_r_) * log(r);
    if (!shifted_.empty() || log_u_ != 0.0) {
      const Scalar u = Scalar(1) + r * r;
      for (const auto& [k, c] : shifted_) v += Scalar(c) * pow(u, Scalar(k));
      if (log_u_ != 0.0) v += Scalar(log_u_) * log1p_r2(r);
    }
    return v;
  }

 private:
  template <typename Scalar>
  static Scalar log1p_r2(Scalar r) {
    using std::log;
    using std::log1p;
    const Scalar r2 = r * r;
    // log1p keeps relative accuracy for small r; for large r use 2 log r + log1p(r^-2)
    if (r2 < Scalar(1)) return log1p(r2);
    return Scalar(2) * log(r) + log1p(Scalar(1) / r2);
  }

  void prune();

  std::map<double, double> powers_;
  double log_r_ = 0.0;
  std::map<int, double> shifted_;
  double log_u_ = 0.0;
};

}  // namespace qgb
