#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qgb/radial/profile.hpp"

namespace qgb {

enum class Route {
  automatic,  // exact closure when present, finite differences otherwise
  numerical   // always finite differences
};

struct DifferentiationOptions {
  int accuracy_order = 10;  // even; order of every derivative in the fused stencil
  int stride = 0;           // node stride of the stencil, 0 = choose from the scalar's epsilon
  Route route = Route::automatic;
};

/**
 * Fornberg's recursion: weights[d][j] approximate the d-th derivative at 0
 * from samples at offsets[j].
 */
template <typename Scalar>
std::vector<std::vector<Scalar>> fornberg_weights(int max_derivative, const std::vector<Scalar>& x) {
  const int np = static_cast<int>(x.size());
  std::vector<std::vector<std::vector<Scalar>>> c(
      max_derivative + 1, std::vector<std::vector<Scalar>>(np, std::vector<Scalar>(np, Scalar(0))));
  c[0][0][0] = Scalar(1);
  Scalar c1(1);
  for (int i = 1; i < np; ++i) {
    Scalar c2(1);
    for (int j = 0; j < i; ++j) {
      const Scalar c3 = x[i] - x[j];
      c2 *= c3;
      for (int k = std::min(i, max_derivative); k >= 0; --k) {
        c[k][i][j] = (x[i] * c[k][i - 1][j] - (k > 0 ? Scalar(k) * c[k - 1][i - 1][j] : Scalar(0))) / c3;
      }
    }
    for (int k = std::min(i, max_derivative); k >= 0; --k) {
      c[k][i][i] = c1 / c2 *
                   ((k > 0 ? Scalar(k) * c[k - 1][i - 1][i - 1] : Scalar(0)) - x[i - 1] * c[k][i - 1][i - 1]);
    }
    c1 = c2;
  }
  std::vector<std::vector<Scalar>> w(max_derivative + 1);
  for (int k = 0; k <= max_derivative; ++k) w[k] = c[k][np - 1];
  return w;
}

namespace detail {

inline std::vector<double> multiply_polynomials(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Coefficients (ascending in D) of P_k(D) = prod_{m<k} (D - 2m)(D - 2m + n - 2),
// so that Delta^k = e^{-2kt} P_k(d/dt) on radial functions, t = log r.
inline std::vector<double> iterated_laplacian_polynomial(int n, int k) {
  std::vector<double> p{1.0};
  for (int m = 0; m < k; ++m) {
    p = multiply_polynomials(p, {-2.0 * m, 1.0});
    p = multiply_polynomials(p, {-2.0 * m + n - 2.0, 1.0});
  }
  return p;
}

template <typename Scalar>
int automatic_stride(int order, int max_derivative, Scalar h) {
  using std::pow;
  const double eps = static_cast<double>(std::numeric_limits<Scalar>::epsilon());
  const double target = 0.5 * std::pow(eps, 1.0 / (order + max_derivative));
  return std::max(1, static_cast<int>(std::lround(target / static_cast<double>(h))));
}

// Applies e^{-scale_exponent * t} * sum_d poly[d] D^d to the trusted samples of p.
template <typename Scalar>
RadialProfile<Scalar> apply_log_operator(const RadialProfile<Scalar>& p, const std::vector<double>& poly,
                                         int scale_exponent, const DifferentiationOptions& opt) {
  using std::exp;
  using std::pow;
  const int dmax = static_cast<int>(poly.size()) - 1;
  if (opt.accuracy_order < 2 || opt.accuracy_order % 2 != 0)
    throw ConfigError("differentiation: accuracy order must be a positive even integer");
  const int half_width = (dmax + 1) / 2 - 1 + opt.accuracy_order / 2;
  const TrustedRange in = p.trusted();
  int stride = opt.stride > 0 ? opt.stride : automatic_stride(opt.accuracy_order, dmax, p.grid().spacing());
  if (opt.stride <= 0 && half_width > 0)
    stride = std::max(1, std::min(stride, (in.size() - 1) / (4 * half_width)));
  const TrustedRange out = in.shrink(half_width * stride);
  if (out.empty() || out.size() < 1)
    throw NumericalError("differentiation: insufficient interior nodes for stencil of half-width " +
                         std::to_string(half_width) + " and stride " + std::to_string(stride));

  std::vector<Scalar> offsets;
  offsets.reserve(2 * half_width + 1);
  for (int j = -half_width; j <= half_width; ++j) offsets.push_back(Scalar(j));
  const auto w = fornberg_weights<Scalar>(dmax, offsets);
  const Scalar H = p.grid().spacing() * Scalar(stride);
  std::vector<Scalar> stencil(2 * half_width + 1, Scalar(0));
  for (int d = 0; d <= dmax; ++d) {
    if (poly[d] == 0.0) continue;
    const Scalar scale = Scalar(poly[d]) / pow(H, Scalar(d));
    for (int j = 0; j < 2 * half_width + 1; ++j) stencil[j] += scale * w[d][j];
  }

  const auto& f = p.values();
  ArrayX<Scalar> v = ArrayX<Scalar>::Zero(p.size());
  for (int i = out.first; i <= out.last; ++i) {
    Scalar acc(0);
    for (int j = 0; j < 2 * half_width + 1; ++j) acc += stencil[j] * f(i + (j - half_width) * stride);
    v(i) = scale_exponent == 0 ? acc : acc * pow(p.grid().r(i), Scalar(-scale_exponent));
  }
  return RadialProfile<Scalar>(p.grid(), std::move(v), out);
}

template <typename Scalar>
bool use_closure(const RadialProfile<Scalar>& p, const DifferentiationOptions& opt) {
  return opt.route == Route::automatic && p.has_closure();
}

}  // namespace detail

/** r d/dr, i.e. d/dt on the log grid. */
template <typename Scalar>
RadialProfile<Scalar> r_d_dr(const RadialProfile<Scalar>& p, const DifferentiationOptions& opt = {}) {
  if (detail::use_closure(p, opt)) return RadialProfile<Scalar>::sample(p.grid(), p.closure()->r_d_dr());
  return detail::apply_log_operator(p, {0.0, 1.0}, 0, opt);
}

/** d^2p/dr^2 + (n-1)/r dp/dr = r^{-2} (D^2 + (n-2) D) p with D = d/dt. */
template <typename Scalar>
RadialProfile<Scalar> radial_laplacian(const RadialProfile<Scalar>& p, Dimension n,
                                       const DifferentiationOptions& opt = {}) {
  if (detail::use_closure(p, opt)) return RadialProfile<Scalar>::sample(p.grid(), p.closure()->laplacian(n));
  return detail::apply_log_operator(p, detail::iterated_laplacian_polynomial(n, 1), 2, opt);
}

/**
 * (-Delta)^k for 1 <= k <= n/2. The numerical route applies the k-fold
 * Laplacian as one fused stencil; the trusted range shrinks by its half-width.
 */
template <typename Scalar>
RadialProfile<Scalar> polyharmonic(const RadialProfile<Scalar>& p, Dimension n, int k,
                                   const DifferentiationOptions& opt = {}) {
  if (k < 1 || k > n.half())
    throw ConfigError("polyharmonic: order k must satisfy 1 <= k <= n/2, got " + std::to_string(k));
  if (detail::use_closure(p, opt)) return RadialProfile<Scalar>::sample(p.grid(), p.closure()->polyharmonic(n, k));
  auto poly = detail::iterated_laplacian_polynomial(n, k);
  if (k % 2 == 1)
    for (auto& c : poly) c = -c;
  return detail::apply_log_operator(p, poly, 2 * k, opt);
}

}  // namespace qgb
