#pragma once

#include <Eigen/Core>
#include <cmath>

#include "qgb/dimension.hpp"

namespace qgb {

template <typename Scalar>
using ArrayX = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

/**
 * Nodes r_i = exp(t_i) with t_i uniform on [log r_min, log r_max].
 * Scalar may be double or an extended-precision type.
 */
template <typename Scalar = double>
class RadialGrid {
 public:
  static constexpr int min_count = 16;

  RadialGrid(Scalar r_min, Scalar r_max, int count) : count_(count) {
    using std::log;
    using std::exp;
    if (!(r_min > 0)) throw ConfigError("radial grid: r_min must be positive");
    if (!(r_max > r_min)) throw ConfigError("radial grid: degenerate range (r_max <= r_min)");
    if (count < min_count) throw ConfigError("radial grid: count must be >= 16");
    t_min_ = log(r_min);
    t_max_ = log(r_max);
    h_ = (t_max_ - t_min_) / Scalar(count - 1);
    r_.resize(count);
    t_.resize(count);
    for (int i = 0; i < count; ++i) {
      // interpolate from both ends so the endpoints are reproduced exactly
      t_(i) = (Scalar(count - 1 - i) * t_min_ + Scalar(i) * t_max_) / Scalar(count - 1);
      r_(i) = exp(t_(i));
    }
    r_(0) = r_min;
    r_(count - 1) = r_max;
  }

  int size() const { return count_; }
  Scalar r(int i) const { return r_(i); }
  Scalar t(int i) const { return t_(i); }
  const ArrayX<Scalar>& nodes() const { return r_; }
  const ArrayX<Scalar>& log_nodes() const { return t_; }
  /** Uniform spacing in t = log r. */
  Scalar spacing() const { return h_; }
  Scalar r_min() const { return r_(0); }
  Scalar r_max() const { return r_(count_ - 1); }

  /** Number of decades spanned. */
  double decades() const {
    return static_cast<double>((t_max_ - t_min_) / Scalar(std::log(10.0)));
  }

  template <typename Other>
  RadialGrid<Other> cast() const {
    return RadialGrid<Other>(Other(r_min()), Other(r_max()), count_);
  }

 private:
  int count_;
  Scalar t_min_, t_max_, h_;
  ArrayX<Scalar> r_, t_;
};

inline RadialGrid<double> build_log_grid(double r_min, double r_max, int count) {
  return RadialGrid<double>(r_min, r_max, count);
}

}  // namespace qgb
