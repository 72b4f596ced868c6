#include "qgb/radial/expression.hpp"

#include <sstream>

namespace qgb {

RadialExpression RadialExpression::constant(double c) { return power(0.0, c); }

RadialExpression RadialExpression::power(double p, double c) {
  RadialExpression e;
  e.powers_[p] = c;
  e.prune();
  return e;
}

RadialExpression RadialExpression::log_r(double c) {
  RadialExpression e;
  e.log_r_ = c;
  return e;
}

RadialExpression RadialExpression::shifted_power(int k, double c) {
  RadialExpression e;
  if (k == 0)
    e.powers_[0.0] = c;
  else
    e.shifted_[k] = c;
  e.prune();
  return e;
}

RadialExpression RadialExpression::log_shifted(double c) {
  RadialExpression e;
  e.log_u_ = c;
  return e;
}

RadialExpression& RadialExpression::operator+=(const RadialExpression& o) {
  for (const auto& [p, c] : o.powers_) powers_[p] += c;
  for (const auto& [k, c] : o.shifted_) shifted_[k] += c;
  log_r_ += o.log_r_;
  log_u_ += o.log_u_;
  prune();
  return *this;
}

RadialExpression& RadialExpression::operator*=(double c) {
  for (auto& term : powers_) term.second *= c;
  for (auto& term : shifted_) term.second *= c;
  log_r_ *= c;
  log_u_ *= c;
  prune();
  return *this;
}

void RadialExpression::prune() {
  std::erase_if(powers_, [](const auto& t) { return t.second == 0.0; });
  std::erase_if(shifted_, [](const auto& t) { return t.second == 0.0; });
  auto it = shifted_.find(0);
  if (it != shifted_.end()) {
    powers_[0.0] += it->second;
    shifted_.erase(it);
    std::erase_if(powers_, [](const auto& t) { return t.second == 0.0; });
  }
}

RadialExpression RadialExpression::laplacian(Dimension n) const {
  const double nd = n;
  RadialExpression out;
  for (const auto& [p, c] : powers_) {
    const double f = p * (p + nd - 2.0);
    if (f != 0.0) out.powers_[p - 2.0] += c * f;
  }
  if (log_r_ != 0.0) out.powers_[-2.0] += log_r_ * (nd - 2.0);
  for (const auto& [k0, c] : shifted_) {
    const double k = k0;
    out.shifted_[k0 - 1] += c * (4.0 * k * (k - 1.0) + 2.0 * nd * k);
    out.shifted_[k0 - 2] += c * (-4.0 * k * (k - 1.0));
  }
  if (log_u_ != 0.0) {
    out.shifted_[-1] += log_u_ * (2.0 * nd - 4.0);
    out.shifted_[-2] += log_u_ * 4.0;
  }
  out.prune();
  return out;
}

RadialExpression RadialExpression::polyharmonic(Dimension n, int k) const {
  if (k < 0) throw ConfigError("polyharmonic: negative order");
  RadialExpression out = *this;
  for (int j = 0; j < k; ++j) out = -out.laplacian(n);
  return out;
}

RadialExpression RadialExpression::r_d_dr() const {
  RadialExpression out;
  for (const auto& [p, c] : powers_)
    if (p != 0.0) out.powers_[p] += c * p;
  if (log_r_ != 0.0) out.powers_[0.0] += log_r_;
  for (const auto& [k, c] : shifted_) {
    out.shifted_[k] += 2.0 * k * c;
    out.shifted_[k - 1] -= 2.0 * k * c;
  }
  if (log_u_ != 0.0) {
    out.powers_[0.0] += 2.0 * log_u_;
    out.shifted_[-1] -= 2.0 * log_u_;
  }
  out.prune();
  return out;
}

bool RadialExpression::is_zero() const {
  return powers_.empty() && shifted_.empty() && log_r_ == 0.0 && log_u_ == 0.0;
}

std::string RadialExpression::to_string() const {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  auto sep = [&](double c) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    return std::abs(c);
  };
  for (const auto& [p, c] : powers_) {
    const double a = sep(c);
    if (p == 0.0) os << a;
    else os << a << "*r^" << p;
  }
  if (log_r_ != 0.0) os << sep(log_r_) << "*log(r)";
  for (const auto& [k, c] : shifted_) os << sep(c) << "*(1+r^2)^" << k;
  if (log_u_ != 0.0) os << sep(log_u_) << "*log(1+r^2)";
  if (first) os << "0";
  return os.str();
}

}  // namespace qgb
