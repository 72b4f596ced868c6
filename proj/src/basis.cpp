#include "qgb/radial/basis.hpp"

namespace qgb {

std::string PolyharmonicBasisElement::label() const {
  switch (kind) {
    case BasisKind::constant: return "1";
    case BasisKind::log_r: return "log r";
    default: return "r^" + std::to_string(static_cast<int>(exponent));
  }
}

std::vector<PolyharmonicBasisElement> polyharmonic_basis(Dimension n) {
  std::vector<PolyharmonicBasisElement> out;
  out.reserve(n);
  for (int l = 1; l <= n; ++l) {
    PolyharmonicBasisElement e{};
    e.index = l;
    if (l == 1) {
      e.kind = BasisKind::constant;
      e.exponent = 0;
      e.function = RadialExpression::constant(1.0);
    } else if (l == n) {
      e.kind = BasisKind::log_r;
      e.exponent = 0;
      e.function = RadialExpression::log_r();
    } else if (l % 2 == 1) {
      e.kind = BasisKind::positive_power;
      e.exponent = l - 1;
      e.function = RadialExpression::power(e.exponent);
    } else {
      e.kind = BasisKind::negative_power;
      e.exponent = -(n - l);
      e.function = RadialExpression::power(e.exponent);
    }
    e.images.push_back(e.function);
    for (int j = 1; j <= n.half(); ++j) e.images.push_back(-e.images.back().laplacian(n));
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace qgb
