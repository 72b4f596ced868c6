#pragma once

#include <optional>
#include <utility>

#include "qgb/radial/expression.hpp"
#include "qgb/radial/grid.hpp"

namespace qgb {

/** Contiguous block of node indices [first, last] whose values are reliable. */
struct TrustedRange {
  int first = 0;
  int last = -1;

  bool empty() const { return last < first; }
  int size() const { return empty() ? 0 : last - first + 1; }
  bool contains(int i) const { return i >= first && i <= last; }
  TrustedRange shrink(int by) const { return {first + by, last - by}; }
};

/**
 * Samples of a radial function on a log grid. Values outside the trusted
 * range are stored as zero. An optional exact closure lets differentiation
 * bypass finite differences.
 */
template <typename Scalar = double>
class RadialProfile {
 public:
  RadialProfile(RadialGrid<Scalar> grid, ArrayX<Scalar> values,
                std::optional<TrustedRange> trusted = std::nullopt,
                std::optional<RadialExpression> closure = std::nullopt)
      : grid_(std::move(grid)), values_(std::move(values)), closure_(std::move(closure)) {
    using std::isfinite;
    if (values_.size() != grid_.size())
      throw ConfigError("radial profile: value count does not match grid");
    trusted_ = trusted.value_or(TrustedRange{0, grid_.size() - 1});
    if (trusted_.first < 0 || trusted_.last >= grid_.size())
      throw ConfigError("radial profile: trusted range outside the grid");
    for (int i = 0; i < grid_.size(); ++i) {
      if (!trusted_.contains(i)) {
        values_(i) = Scalar(0);
      } else if (!isfinite(values_(i))) {
        throw NumericalError("radial profile: non-finite value at node " + std::to_string(i));
      }
    }
  }

  static RadialProfile sample(const RadialGrid<Scalar>& grid, const RadialExpression& f) {
    ArrayX<Scalar> v(grid.size());
    for (int i = 0; i < grid.size(); ++i) v(i) = f(grid.r(i));
    return RadialProfile(grid, std::move(v), std::nullopt, f);
  }

  template <typename F>
  static RadialProfile tabulate(const RadialGrid<Scalar>& grid, F&& f) {
    ArrayX<Scalar> v(grid.size());
    for (int i = 0; i < grid.size(); ++i) v(i) = f(grid.r(i));
    return RadialProfile(grid, std::move(v));
  }

  const RadialGrid<Scalar>& grid() const { return grid_; }
  const ArrayX<Scalar>& values() const { return values_; }
  Scalar value(int i) const { return values_(i); }
  Scalar operator[](int i) const { return values_(i); }
  int size() const { return grid_.size(); }
  const TrustedRange& trusted() const { return trusted_; }
  bool has_closure() const { return closure_.has_value(); }
  const std::optional<RadialExpression>& closure() const { return closure_; }

  /** Same samples without the closure, forcing numerical differentiation. */
  RadialProfile without_closure() const { return RadialProfile(grid_, values_, trusted_); }

  friend RadialProfile operator+(const RadialProfile& a, const RadialProfile& b) {
    return combine(a, Scalar(1), b, Scalar(1));
  }
  friend RadialProfile operator*(Scalar c, const RadialProfile& a) {
    std::optional<RadialExpression> cl;
    if (a.closure_) cl = *a.closure_ * static_cast<double>(c);
    return RadialProfile(a.grid_, (c * a.values_).eval(), a.trusted_, cl);
  }

  static RadialProfile combine(const RadialProfile& a, Scalar ca, const RadialProfile& b, Scalar cb) {
    if (a.size() != b.size()) throw ConfigError("radial profile: grids differ");
    TrustedRange t{std::max(a.trusted_.first, b.trusted_.first), std::min(a.trusted_.last, b.trusted_.last)};
    std::optional<RadialExpression> cl;
    if (a.closure_ && b.closure_)
      cl = *a.closure_ * static_cast<double>(ca) + *b.closure_ * static_cast<double>(cb);
    return RadialProfile(a.grid_, (ca * a.values_ + cb * b.values_).eval(), t, cl);
  }

 private:
  RadialGrid<Scalar> grid_;
  ArrayX<Scalar> values_;
  TrustedRange trusted_;
  std::optional<RadialExpression> closure_;
};

}  // namespace qgb
