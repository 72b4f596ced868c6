#pragma once

#include <string>
#include <vector>

#include "qgb/radial/expression.hpp"

namespace qgb {

enum class BasisKind { constant, positive_power, negative_power, log_r };

/**
 * One radial solution of (-Delta)^{n/2} u = 0 on R^n \ {0}. Element index l
 * (1-based) is annihilated by (-Delta)^k exactly when l <= 2k.
 */
struct PolyharmonicBasisElement {
  BasisKind kind;
  int index;        // 1..n
  double exponent;  // power of r; 0 for the constant and for log r
  RadialExpression function;
  std::vector<RadialExpression> images;  // images[j] = (-Delta)^j function, j = 0..n/2

  /** Smallest k with (-Delta)^k function = 0. */
  int annihilating_order() const { return (index + 1) / 2; }
  std::string label() const;
};

/** {1, r^{-(n-2)}, r^2, r^{-(n-4)}, ..., r^{n-4}, r^{-2}, r^{n-2}, log r}. */
std::vector<PolyharmonicBasisElement> polyharmonic_basis(Dimension n);

}  // namespace qgb
