#pragma once

#include "qgb/dimension.hpp"

namespace qgb {

struct NormalizationConstants {
  double gamma;  // 2^{n-2} ((n-2)/2)! pi^{n/2}
  double sigma;  // area of the unit (n-1)-sphere
  double omega;  // volume of the unit ball, sigma / n
};

NormalizationConstants constants(Dimension n);

}  // namespace qgb
