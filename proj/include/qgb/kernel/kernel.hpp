#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qgb/metrics/metric.hpp"
#include "qgb/radial/limits.hpp"

namespace qgb {

/**
 * Sphere averages over |x| = r with |y| = s:
 *   I = |x-y|^{2-n},  J = |x-y|^{-2},  K = |r^2 - s^2| |x-y|^{-2},  L = log(s / |x-y|).
 */
enum class KernelKind { I, J, K, L };

KernelKind parse_kernel_kind(const std::string& name);
std::string to_string(KernelKind kind);

struct KernelValue {
  double value = 0.0;
  double estimated_error = 0.0;
  /** False for L outside r/2 <= s <= 3r/2, where no uniform bound holds. */
  bool bound_guaranteed = true;
  std::string flag;
};

KernelValue kernel_integral(KernelKind kind, double r, double s, Dimension n, const QuadratureSpec& spec = {});

/**
 * f_alpha(r) = (1/gamma_n) int log(|y| / |x - y|) F(y) dy + alpha log r.
 * For axisymmetric F this is the sphere mean over |x| = r.
 */
double f_alpha(const QDensity& F, double alpha, double r, const QuadratureSpec& spec = {});

/** f_alpha and its radial derivatives on many radii with one set of nodes. */
class LogKernelField {
 public:
  LogKernelField(const QDensity& F, double alpha, const QuadratureSpec& spec = {});

  double value(double r) const { return pot_.value(r) + alpha_ * std::log(r); }
  double r_derivative(double r) const { return pot_.r_derivative(r) + alpha_; }
  double laplacian(double r) const { return pot_.laplacian(r) + alpha_ * (n_ - 2.0) / (r * r); }
  double alpha() const { return alpha_; }
  double mass_over_gamma() const;

 private:
  Dimension n_;
  double alpha_;
  RadialLogPotential pot_;
};

struct KernelLimits {
  LimitEstimate limit_at_zero;
  LimitEstimate limit_at_infinity;
  double difference = 0.0;  // limit_at_infinity.value - limit_at_zero.value
};

/** Limits of r df_alpha/dr at 0 and infinity, sampled inward from the given edges. */
KernelLimits limit_difference(const QDensity& F, double alpha, const QuadratureSpec& spec = {}, double r_zero = 1e-5,
                              double r_infinity = 1e5, double tol = 1e-9);

struct GrowthBounds {
  double sup_r_gradient = 0.0;   // sup r |grad f_alpha|
  double sup_r2_laplacian = 0.0;  // sup r^2 |Delta f_alpha|
};

GrowthBounds growth_bounds(const QDensity& F, double alpha, const RadialGrid<double>& grid,
                           const QuadratureSpec& spec = {});

struct ConstancyReport {
  double alpha = 0.0;             // least-squares slope of w - v against log r
  double alpha_from_limit = 0.0;  // median of r d(w - v)/dr at the three smallest radii
  double C = 0.0;
  double residual = 0.0;  // max - min of w - v - alpha log r
  double total_q_over_gamma = 0.0;
  std::vector<double> radii;
  std::vector<double> w_minus_v;
  std::vector<std::string> notes;
};

/** The default 6-decade grid of reconstruct. */
RadialGrid<double> reconstruction_grid();

/**
 * Recovers the kernel part v of a radial metric from its Q density and
 * reports how far w - v is from alpha log r + C.
 */
ConstancyReport reconstruct(const ConformalMetric& m, std::optional<double> alpha_hint = std::nullopt,
                            const QuadratureSpec& spec = {});
ConstancyReport reconstruct(const ConformalMetric& m, std::optional<double> alpha_hint, const QuadratureSpec& spec,
                            const RadialGrid<double>& grid);

/** Density Q e^{nw} of a radial metric (F itself for kernel-defined metrics). */
QDensity density_of(const ConformalMetric& m, const QuadratureSpec& spec = {});

}  // namespace qgb
