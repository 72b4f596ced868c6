#include "qgb/curvature/constants.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

namespace qgb {

namespace {

// ((n-2)/2)! exactly for (n-2)/2 <= 10, Gamma function beyond that.
double half_factorial(int n) {
  const int m = (n - 2) / 2;
  if (m <= 10) {
    std::uint64_t f = 1;
    for (int i = 2; i <= m; ++i) f *= static_cast<std::uint64_t>(i);
    return static_cast<double>(f);
  }
  return std::tgamma(m + 1.0);
}

}  // namespace

NormalizationConstants constants(Dimension n) {
  const double pi_half = std::pow(std::numbers::pi, n.half());
  const double fact = half_factorial(n);
  NormalizationConstants c{};
  c.gamma = std::ldexp(fact * pi_half, n - 2);
  c.sigma = 2.0 * pi_half / fact;
  c.omega = c.sigma / n;
  return c;
}

}  // namespace qgb
