#include "qgb/metrics/potential.hpp"

#include <cmath>

#include "qgb/curvature/constants.hpp"
#include "qgb/quadrature/rules.hpp"

namespace qgb {

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace

AveragedKernels::AveragedKernels(Dimension n) : n_(n) {
  const int m = n - 2;
  const double centre = binomial(m, m / 2);
  for (int j = 1; j <= m / 2; ++j)
    a_.push_back((j % 2 ? -1.0 : 1.0) * binomial(m, m / 2 - j) / centre / (2.0 * j));
  for (int l = 0; l <= (n - 4) / 2; ++l)
    b_.push_back(2.0 * (l % 2 ? -1.0 : 1.0) * binomial(m - 1, m / 2 - 1 - l) / centre);
}

double AveragedKernels::poly_j(double rho2) const {
  double v = 0.0;
  for (auto it = b_.rbegin(); it != b_.rend(); ++it) v = v * rho2 + *it;
  return v;
}

double AveragedKernels::poly_l(double rho2) const {
  double v = 0.0;
  for (auto it = a_.rbegin(); it != a_.rend(); ++it) v = (v + *it) * rho2;
  return v;
}

double AveragedKernels::log_kernel(double r, double s) const {
  if (s < r) {
    const double rho = s / r;
    return std::log(rho) + poly_l(rho * rho);
  }
  const double rho = r / s;
  return poly_l(rho * rho);
}

double AveragedKernels::inverse_square(double r, double s) const {
  const double big = std::max(r, s), rho = std::min(r, s) / big;
  return poly_j(rho * rho) / (big * big);
}

double AveragedKernels::signed_k(double r, double s) const {
  const double big = std::max(r, s), rho = std::min(r, s) / big, rho2 = rho * rho;
  const double f = (1.0 - rho2) * poly_j(rho2);
  return s < r ? f : -f;
}

double AveragedKernels::one_plus_k(double r, double s) const {
  const double big = std::max(r, s), rho = std::min(r, s) / big, rho2 = rho * rho;
  const double p = poly_j(rho2);
  if (s < r) return 1.0 + (1.0 - rho2) * p;
  return rho2 * p - (p - 1.0);
}

RadialLogPotential::RadialLogPotential(QDensity F, const QuadratureSpec& spec)
    : F_(std::move(F)), kernels_(F_.dimension()), spec_(spec), gamma_(constants(F_.dimension()).gamma) {
  spec_.validate();
  nodes_ = panel_nodes(F_.panels(), F_.dimension(), spec_.radial_nodes);
  f_.resize(nodes_.s.size());
  for (std::size_t i = 0; i < f_.size(); ++i) {
    f_[i] = F_(nodes_.s[i]);
    mass_ += nodes_.weight[i] * f_[i];
  }
}

template <typename K>
double RadialLogPotential::integrate(double r, K&& kernel) const {
  const auto& panels = F_.panels();
  const int per = spec_.radial_nodes;
  double acc = 0.0;
  for (std::size_t p = 0; p < panels.size(); ++p) {
    const auto& pan = panels[p];
    if (r > pan.a && r < pan.b) {
      // kernel has a kink at s = r: integrate both sides separately
      const std::vector<QDensity::Panel> halves{{pan.a, r, pan.logarithmic}, {r, pan.b, pan.logarithmic}};
      const RadialNodes split = panel_nodes(halves, F_.dimension(), per);
      for (std::size_t i = 0; i < split.s.size(); ++i)
        acc += split.weight[i] * F_(split.s[i]) * kernel(r, split.s[i]);
    } else {
      const std::size_t base = p * per;
      for (int i = 0; i < per; ++i) acc += nodes_.weight[base + i] * f_[base + i] * kernel(r, nodes_.s[base + i]);
    }
  }
  return acc;
}

double RadialLogPotential::value(double r) const {
  if (!(r > 0.0)) throw ConfigError("potential: r must be positive");
  if (F_.is_zero()) return 0.0;
  return integrate(r, [this](double x, double s) { return kernels_.log_kernel(x, s); }) / gamma_;
}

double RadialLogPotential::r_derivative(double r) const {
  if (!(r > 0.0)) throw ConfigError("potential: r must be positive");
  if (F_.is_zero()) return 0.0;
  return -0.5 * integrate(r, [this](double x, double s) { return kernels_.one_plus_k(x, s); }) / gamma_;
}

double RadialLogPotential::laplacian(double r) const {
  if (!(r > 0.0)) throw ConfigError("potential: r must be positive");
  if (F_.is_zero()) return 0.0;
  const double nn = F_.dimension();
  return -(nn - 2.0) * integrate(r, [this](double x, double s) { return kernels_.inverse_square(x, s); }) / gamma_;
}

AxisymmetricLogPotential::AxisymmetricLogPotential(QDensity F, const QuadratureSpec& spec)
    : F_(std::move(F)), spec_(spec), gamma_(constants(F_.dimension()).gamma), panels_(F_.panels()) {
  spec_.validate();
  const Dimension n = F_.dimension();
  const auto& polar = gauss_jacobi_rule(spec_.angular_nodes, 0.5 * (n - 3));
  for (int i = 0; i < polar.size(); ++i) {
    const double phi = F_.angular_factor(polar.nodes[i]);
    if (phi == 0.0) continue;
    polar_u_.push_back(polar.nodes[i]);
    polar_w_.push_back(polar.weights[i]);
    polar_phi_.push_back(phi);
  }
  const auto& az = gauss_jacobi_rule(spec_.azimuthal_nodes, 0.5 * (n - 4));
  azim_c_ = az.nodes;
  azim_w_ = az.weights;
}

double AxisymmetricLogPotential::value(double r, double u) const {
  if (!(r > 0.0)) throw ConfigError("potential: r must be positive");
  if (F_.is_zero()) return 0.0;
  {
    std::lock_guard lock(mu_);
    auto it = memo_.find({r, u});
    if (it != memo_.end()) return it->second;
  }
  const double v = compute(r, u);
  std::lock_guard lock(mu_);
  memo_.emplace(std::make_pair(r, u), v);
  return v;
}

double AxisymmetricLogPotential::compute(double r, double u) const {
  std::vector<QDensity::Panel> panels;
  panels.reserve(panels_.size() + 1);
  for (const auto& p : panels_) {
    if (r > p.a && r < p.b) {
      panels.push_back({p.a, r, p.logarithmic});
      panels.push_back({r, p.b, p.logarithmic});
    } else {
      panels.push_back(p);
    }
  }
  const RadialNodes nodes = panel_nodes(panels, F_.dimension(), spec_.radial_nodes);
  const double px = std::sqrt(std::max(0.0, 1.0 - u * u));
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes.s.size(); ++i) {
    const double s = nodes.s[i];
    const double g = F_.radial_factor(s);
    if (g == 0.0) continue;
    const double diff2 = (r - s) * (r - s), rs2 = 2.0 * r * s;
    double ang = 0.0;
    for (std::size_t j = 0; j < polar_u_.size(); ++j) {
      const double uy = polar_u_[j];
      const double py = std::sqrt(std::max(0.0, 1.0 - uy * uy));
      double inner = 0.0;
      for (std::size_t k = 0; k < azim_c_.size(); ++k) {
        const double cosg = u * uy + px * py * azim_c_[k];
        const double d2 = diff2 + rs2 * (1.0 - cosg);
        inner += azim_w_[k] * std::log(d2);
      }
      ang += polar_w_[j] * polar_phi_[j] * (std::log(s) - 0.5 * inner);
    }
    acc += nodes.weight[i] * g * ang;
  }
  return acc / gamma_;
}

}  // namespace qgb
