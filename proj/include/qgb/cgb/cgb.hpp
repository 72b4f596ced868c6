#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qgb/curvature/curvature.hpp"
#include "qgb/metrics/metric.hpp"
#include "qgb/radial/limits.hpp"

namespace qgb {

/** V_n(r) = int_{B_r} e^{nw} dx and V_{n-1}(r) = (1/n) int_{dB_r} e^{(n-1)w} dsigma. */
struct MixedVolumes {
  std::vector<double> r;
  std::vector<double> V_n;
  std::vector<double> V_n_minus_1;
  // logs stay finite where the volumes overflow
  std::vector<double> log_V_n;
  std::vector<double> log_V_n_minus_1;
};

/** Ball volumes on ascending radii; throws DivergenceError when V_n diverges at the origin. */
MixedVolumes mixed_volumes(const ConformalMetric& m, const std::vector<double>& r_list, const QuadratureSpec& spec = {});

/** Same with V_n replaced by the annulus volume between r and R. */
MixedVolumes annulus_volumes(const ConformalMetric& m, const std::vector<double>& r_list, double R,
                             const QuadratureSpec& spec = {});

enum class IsoVariant { ball, annulus };

struct IsoperimetricSeries {
  IsoVariant variant = IsoVariant::ball;
  double R = 0.0;  // annulus reference radius
  std::vector<double> r;
  std::vector<double> C;
  LimitEstimate at_zero;
  LimitEstimate at_infinity;
  std::vector<std::string> diagnostics;
};

/** Geometric radii from lo to hi with the limit-sampling ratio 10^{1/4}. */
std::vector<double> series_radii(double lo, double hi);

/**
 * C(r) = V_{n-1}^{n/(n-1)} / (omega_n^{1/(n-1)} V_n) with end-limit extrapolation.
 * R <= 0 selects the geometric mean of the radius span.
 */
IsoperimetricSeries isoperimetric_series(const ConformalMetric& m, IsoVariant variant, const std::vector<double>& r_list,
                                         const QuadratureSpec& spec = {}, double R = 0.0);

/**
 * Limit of a sequence ordered towards an end: iterated Aitken, and for
 * sequences converging like 1/log r a polynomial fit in 1/|log(r/R)|.
 */
LimitEstimate series_limit(const std::vector<std::pair<double, double>>& sequence, double R, double tol);

enum class Topology { one_end_one_singularity, two_ends };

Topology parse_topology(const std::string& name);
std::string to_string(Topology t);

struct DefectOptions {
  Topology topology = Topology::one_end_one_singularity;
  /** NaN selects 1e-6 for closed-form metrics and 1e-4 for kernel-defined ones. */
  double tolerance = std::numeric_limits<double>::quiet_NaN();
  /** Annulus reference radii for the two-end variant (empty: three around the span centre). */
  std::vector<double> R_values;
};

struct DefectReport {
  int n = 0;
  Topology topology = Topology::one_end_one_singularity;
  int chi = 1;
  double total_q_over_gamma = 0.0;
  double total_q_error = 0.0;
  std::vector<double> nu;
  std::vector<double> mu;
  double residual = 0.0;  // |chi - total - (sum nu - sum mu)|
  double tolerance = 0.0;
  double limit_tolerance = 0.0;
  bool converged = true;
  bool divergent = false;  // a ratio diverges: numerical non-convergence
  bool pass = false;
  std::optional<HypothesisVerdict> hypotheses;
  std::optional<bool> fang_holds;
  std::map<std::string, double> values;  // numerical diagnostics
  std::vector<std::string> diagnostics;
  // series behind the report
  MixedVolumes volumes;
  std::vector<double> C;
};

/** chi - (1/gamma_n) int Q dV against nu - mu, or -(1/gamma_n) int Q dV against nu_1 + nu_2. */
DefectReport defect_report(const ConformalMetric& m, const DefectOptions& options = {}, const QuadratureSpec& spec = {});

enum class PieceKind { end, singular, background };

/**
 * One piece of the partition-of-unity decomposition: an end carries
 * -(1/gamma_n) int Q = 1 + nu_i, a singular point -mu_j, the background chi(S^n).
 */
struct DefectPiece {
  PieceKind kind = PieceKind::end;
  double value = 0.0;  // nu_i, mu_j, or unused for the background
  double total_q_over_gamma = 0.0;
  std::string label;
};

DefectPiece end_piece(double nu, std::string label = "end");
DefectPiece singular_piece(double mu, std::string label = "singular point");
DefectPiece background_piece();

/**
 * chi(S^n) - k - total = sum nu_i - sum mu_j for k end and l singular pieces.
 * The report's "aggregation_residual" uses the piece identities only.
 */
DefectReport multi_end_aggregate(const std::vector<DefectPiece>& pieces, double total_q_over_gamma, int k, int l,
                                 int n = 4, double tolerance = 1e-12);

struct AveragingSeries {
  double k = 0.0;
  std::vector<double> r;
  std::vector<double> log_ratio;  // log of mean(e^{kw}) / e^{k w-bar}
};

/** Sphere mean of e^{kw} against e^{k w-bar}, w-bar the sphere mean of w on the same polar rule. */
AveragingSeries averaging_comparison(const ConformalMetric& m, double k, const std::vector<double>& r_list,
                                     const QuadratureSpec& spec = {});

}  // namespace qgb
