#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qgb/metrics/potential.hpp"
#include "qgb/quadrature/sphere.hpp"
#include "qgb/radial/profile.hpp"

namespace qgb {

enum class FactorKind { radial, axisymmetric, kernel_defined };

/**
 * g = e^{2w} |dx|^2 on R^n \ {0}. Immutable; copies share state.
 * Radial factors carry an exact RadialExpression; kernel-defined factors are
 * w = v_F + alpha log|x| + C with v_F the log potential of a density F.
 */
class ConformalMetric {
 public:
  static ConformalMetric radial(Dimension n, RadialExpression w, std::string provenance);
  static ConformalMetric axisymmetric(Dimension n, AxisymmetricField w, std::string provenance);
  static ConformalMetric kernel_defined(QDensity F, double alpha, double C, const QuadratureSpec& spec);

  Dimension dimension() const { return n_; }
  FactorKind kind() const { return kind_; }
  const std::string& provenance() const { return provenance_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /** True when w depends on |x| only. */
  bool is_radial() const;

  /** w at radius r (radial metrics). */
  double w(double r) const;
  /** w at radius r and cos(theta) = u from the symmetry axis. */
  double w(double r, double cos_theta) const;
  /** r dw/dr and Delta w (radial metrics). */
  double r_dw_dr(double r) const;
  double laplacian_w(double r) const;
  /** (1/2)(-Delta)^{n/2} w = Q e^{nw} for radial metrics. */
  double q_density(double r) const;

  /** Exact symbolic factor, when the metric has one. */
  const std::optional<RadialExpression>& closure() const { return closure_; }
  const QDensity* density() const { return density_.get(); }
  double alpha() const { return alpha_; }
  double offset() const { return offset_; }
  const RadialLogPotential* radial_potential() const { return radial_pot_.get(); }
  const AxisymmetricLogPotential* axisymmetric_potential() const { return axi_pot_.get(); }
  const QuadratureSpec& spec() const { return spec_; }

  /** The metric e^{2(w + c)} |dx|^2. */
  ConformalMetric shifted(double c) const;

  /** Radially averaged metric: for kernel metrics the potential of the averaged density. */
  ConformalMetric averaged() const;

 private:
  explicit ConformalMetric(Dimension n) : n_(n) {}

  Dimension n_;
  FactorKind kind_ = FactorKind::radial;
  std::string provenance_;
  std::vector<std::string> warnings_;
  std::optional<RadialExpression> closure_;
  std::shared_ptr<const RadialExpression> q_closure_;  // (1/2)(-Delta)^{n/2} w
  std::shared_ptr<const RadialExpression> drdr_closure_, lap_closure_;
  AxisymmetricField field_;
  std::shared_ptr<const QDensity> density_;
  std::shared_ptr<const RadialLogPotential> radial_pot_;
  std::shared_ptr<const AxisymmetricLogPotential> axi_pot_;
  double alpha_ = 0.0, offset_ = 0.0, shift_ = 0.0;
  QuadratureSpec spec_;
};

/** flat, cone(alpha), sphere, counterexample, cylinder. */
ConformalMetric catalog(const std::string& name, Dimension n, const std::vector<double>& params = {});

/** The generalised normal metric w = (1/gamma_n) int log(|y|/|x-y|) F(y) dy + alpha log|x| + C. */
ConformalMetric construct_normal(QDensity F, double alpha, double C, const QuadratureSpec& spec = {});

/** w(r) or w(r, theta); theta in radians from the symmetry axis. */
double evaluate_w(const ConformalMetric& m, double r, std::optional<double> theta = std::nullopt);

/** Centre of a symmetrization: position along the symmetry axis and distance from it. */
struct SymmetrizationCenter {
  double axial = 0.0;
  double transverse = 0.0;
};

/** w-bar(r) = mean of w over the sphere of radius r around the centre, sampled on the grid. */
RadialProfile<double> symmetrize(const ConformalMetric& m, SymmetrizationCenter x0, const RadialGrid<double>& grid,
                                 const QuadratureSpec& spec = {});

}  // namespace qgb
