#pragma once

#include <string>
#include <vector>

#include "qgb/curvature/constants.hpp"
#include "qgb/metrics/metric.hpp"
#include "qgb/radial/differentiation.hpp"
#include "qgb/radial/limits.hpp"

namespace qgb {

/** Q and R of a radial metric on grid nodes. */
struct CurvatureField {
  RadialGrid<double> grid;
  ArrayX<double> Q;          // Q_{g,n}
  ArrayX<double> R;          // scalar curvature
  ArrayX<double> q_density;  // Q e^{nw} = (1/2)(-Delta)^{n/2} w
  TrustedRange trusted;
};

/** Q = (1/2) e^{-nw} (-Delta)^{n/2} w; exact closures unless the route is numerical. */
CurvatureField q_curvature(const ConformalMetric& m, const RadialGrid<double>& grid,
                           const DifferentiationOptions& opt = {});

/** R = -2(n-1)(Delta w + (n/2 - 1)|grad w|^2) e^{-2w}. */
CurvatureField scalar_curvature(const ConformalMetric& m, const RadialGrid<double>& grid,
                                const DifferentiationOptions& opt = {});

/** Pointwise R for radial metrics. */
double scalar_curvature_at(const ConformalMetric& m, double r);

struct TotalQ {
  double integral = 0.0;      // int Q e^{nw} dx
  double abs_integral = 0.0;  // int |Q| e^{nw} dx
  double estimated_error = 0.0;
};

/** Total Q-curvature; throws DivergenceError when int |Q| dV diverges. */
TotalQ total_q(const ConformalMetric& m, const QuadratureSpec& spec = {});

struct HypothesisVerdict {
  // branch (a): R >= -tol outside some r_1 and inside some r_2
  bool scalar_nonnegative_at_zero = false;
  bool scalar_nonnegative_at_infinity = false;
  bool branch_a = false;
  // branch (b): r |grad w| and r^2 |Delta w| bounded
  bool gradient_bounded = false;
  bool laplacian_bounded = false;
  bool branch_b = false;
  double sup_r_gradient = 0.0;
  double sup_r2_laplacian = 0.0;
  // liminf R >= 0 at infinity, which alone does not give branch (a)
  bool liminf_scalar_nonnegative = false;
  bool liminf_only = false;
  std::vector<std::string> notes;

  bool holds() const { return branch_a || branch_b; }
};

/** Checks the two alternative asymptotic hypotheses on the tails of the grid. */
HypothesisVerdict hypothesis_check(const ConformalMetric& m, const RadialGrid<double>& grid);
HypothesisVerdict hypothesis_check(const ConformalMetric& m);

}  // namespace qgb
