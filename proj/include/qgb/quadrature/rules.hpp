#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

namespace qgb {

template <typename Scalar>
struct QuadratureRule {
  std::vector<Scalar> nodes;
  std::vector<Scalar> weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

/** Gauss–Legendre rule on [-1, 1] by Newton iteration on P_N. */
template <typename Scalar>
QuadratureRule<Scalar> gauss_legendre(int n) {
  using std::abs;
  using std::cos;
  QuadratureRule<Scalar> q;
  q.nodes.resize(n);
  q.weights.resize(n);
  const Scalar pi = Scalar(std::numbers::pi);
  const Scalar tol = Scalar(4) * std::numeric_limits<Scalar>::epsilon();
  // returns (P_n(x), P_n'(x))
  auto legendre = [n](Scalar x) {
    Scalar p0(1), p1 = x;
    for (int k = 2; k <= n; ++k) {
      const Scalar p2 = (Scalar(2 * k - 1) * x * p1 - Scalar(k - 1) * p0) / Scalar(k);
      p0 = p1;
      p1 = p2;
    }
    return std::pair<Scalar, Scalar>{p1, Scalar(n) * (x * p1 - p0) / (x * x - Scalar(1))};
  };
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Scalar x = cos(pi * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(x);
      const Scalar dx = p / dp;
      x -= dx;
      if (abs(dx) < tol) break;
    }
    const Scalar dp = legendre(x).second;
    const Scalar w = Scalar(2) / ((Scalar(1) - x * x) * dp * dp);
    q.nodes[i] = -x;
    q.nodes[n - 1 - i] = x;
    q.weights[i] = w;
    q.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) q.nodes[n / 2] = Scalar(0);
  return q;
}

/** Cached double-precision Gauss–Legendre rule. */
const QuadratureRule<double>& gauss_legendre_rule(int n);

/**
 * Gauss–Jacobi rule for the weight (1-x)^a (1+x)^b on [-1, 1] via the
 * Golub–Welsch eigenproblem, weights normalized to sum to one.
 */
QuadratureRule<double> gauss_jacobi(int n, double a, double b);

/** Cached symmetric Gauss–Jacobi rule (a = b), normalized weights. */
const QuadratureRule<double>& gauss_jacobi_rule(int n, double a);

struct TanhSinhResult {
  double value = 0.0;
  double estimated_error = 0.0;
  int levels = 0;
};

/**
 * Tanh-sinh quadrature of f on [a, b]. The integrand is called as
 * f(x, x - a, b - x) with both gaps computed without cancellation so endpoint
 * singularities can be evaluated accurately.
 */
template <typename F>
TanhSinhResult tanh_sinh(F&& f, double a, double b, double rel_tol = 1e-14, int max_level = 10) {
  const double half = 0.5 * (b - a);
  const double pi2 = 0.5 * std::numbers::pi;
  auto node_sum = [&](double t) {
    // contribution of the symmetric pair at +-t (t > 0) or the centre (t = 0)
    const double u = pi2 * std::sinh(t);
    const double e = std::exp(-2.0 * u);
    const double c = 2.0 * e / (1.0 + e);  // 1 - tanh(u)
    const double ch = std::cosh(u);
    const double w = pi2 * std::cosh(t) / (ch * ch);
    if (!(w > 1e-300) || c * half <= 0.0) return std::pair<double, bool>{0.0, false};
    const double gap = half * c;
    double s;
    if (t == 0.0) {
      s = f(a + half, half, half);
    } else {
      const double far = half * (2.0 - c);
      s = f(a + gap, gap, far) + f(b - gap, far, gap);
    }
    // an integrable endpoint singularity can overflow before the weight underflows;
    // the truncated tail is below the weight scale there
    const double contrib = w * s;
    if (!std::isfinite(contrib)) return std::pair<double, bool>{0.0, false};
    return std::pair<double, bool>{contrib, true};
  };

  TanhSinhResult res;
  double h = 1.0;
  double sum = node_sum(0.0).first;
  for (int j = 1;; ++j) {
    const auto [v, ok] = node_sum(j * h);
    if (!ok) break;
    sum += v;
  }
  double prev = half * h * sum;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    double add = 0.0;
    for (int j = 1;; j += 2) {
      const auto [v, ok] = node_sum(j * h);
      if (!ok) break;
      add += v;
    }
    sum += add;
    const double cur = half * h * sum;
    res.value = cur;
    res.estimated_error = std::abs(cur - prev);
    res.levels = level;
    if (level >= 3 && res.estimated_error <= rel_tol * std::abs(cur)) break;
    prev = cur;
  }
  return res;
}

}  // namespace qgb
