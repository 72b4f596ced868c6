#include "qgb/quadrature/rules.hpp"

#include <Eigen/Eigenvalues>
#include <map>
#include <memory>
#include <mutex>

namespace qgb {

const QuadratureRule<double>& gauss_legendre_rule(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<QuadratureRule<double>>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<QuadratureRule<double>>(gauss_legendre<double>(n));
  return *slot;
}

QuadratureRule<double> gauss_jacobi(int n, double a, double b) {
  Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    diag(k) = (a == b) ? 0.0 : (b * b - a * a) / (s * (s + 2.0));
    if (k == 0 && a != b) diag(0) = (b - a) / (a + b + 2.0);
  }
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    const double num = 4.0 * k * (k + a) * (k + b) * (k + a + b);
    const double den = s * s * (s + 1.0) * (s - 1.0);
    sub(k - 1) = std::sqrt(num / den);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  QuadratureRule<double> q;
  q.nodes.resize(n);
  q.weights.resize(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    q.nodes[i] = es.eigenvalues()(i);
    const double v = es.eigenvectors()(0, i);
    q.weights[i] = v * v;
    total += q.weights[i];
  }
  for (double& w : q.weights) w /= total;
  if (a == b) {
    // enforce exact symmetry of the rule
    for (int i = 0; i < n / 2; ++i) {
      const double x = 0.5 * (q.nodes[n - 1 - i] - q.nodes[i]);
      const double w = 0.5 * (q.weights[i] + q.weights[n - 1 - i]);
      q.nodes[i] = -x;
      q.nodes[n - 1 - i] = x;
      q.weights[i] = q.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) q.nodes[n / 2] = 0.0;
  }
  return q;
}

const QuadratureRule<double>& gauss_jacobi_rule(int n, double a) {
  static std::mutex mu;
  static std::map<std::pair<int, double>, std::unique_ptr<QuadratureRule<double>>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{n, a}];
  if (!slot) slot = std::make_unique<QuadratureRule<double>>(gauss_jacobi(n, a, a));
  return *slot;
}

}  // namespace qgb
