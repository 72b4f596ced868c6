#include <charconv>
#include <cmath>

#include "qgb/io/commands.hpp"

namespace qgb::io {

using nlohmann::ordered_json;

ordered_json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

namespace {

ordered_json numbers(const std::vector<double>& xs) {
  ordered_json a = ordered_json::array();
  for (double x : xs) a.push_back(number(x));
  return a;
}

std::string behavior(LimitBehavior b) {
  switch (b) {
    case LimitBehavior::finite:
      return "finite";
    case LimitBehavior::diverges_up:
      return "diverges_up";
    case LimitBehavior::diverges_down:
      return "diverges_down";
    case LimitBehavior::unsettled:
      break;
  }
  return "unsettled";
}

std::string csv_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

ordered_json to_json(const HypothesisVerdict& h) {
  ordered_json j;
  j["branch_a"] = h.branch_a;
  j["scalar_nonnegative_at_zero"] = h.scalar_nonnegative_at_zero;
  j["scalar_nonnegative_at_infinity"] = h.scalar_nonnegative_at_infinity;
  j["branch_b"] = h.branch_b;
  j["gradient_bounded"] = h.gradient_bounded;
  j["laplacian_bounded"] = h.laplacian_bounded;
  j["sup_r_gradient"] = number(h.sup_r_gradient);
  j["sup_r2_laplacian"] = number(h.sup_r2_laplacian);
  j["liminf_scalar_nonnegative"] = h.liminf_scalar_nonnegative;
  j["liminf_only"] = h.liminf_only;
  j["holds"] = h.holds();
  j["notes"] = h.notes;
  return j;
}

ordered_json to_json(const LimitEstimate& e) {
  ordered_json j;
  j["value"] = number(e.value);
  j["error_estimate"] = number(e.error_estimate);
  j["converged"] = e.converged;
  j["behavior"] = behavior(e.behavior);
  return j;
}

ordered_json to_json(const QuadratureSpec& q) {
  ordered_json j;
  j["angular_nodes"] = q.angular_nodes;
  j["radial_nodes"] = q.radial_nodes;
  j["azimuthal_nodes"] = q.azimuthal_nodes;
  j["r_lo"] = q.r_lo;
  j["r_hi"] = q.r_hi;
  return j;
}

ordered_json to_json(const DefectReport& rep) {
  ordered_json j;
  j["n"] = rep.n;
  j["topology"] = to_string(rep.topology);
  j["chi"] = rep.chi;
  j["total_q_over_gamma"] = number(rep.total_q_over_gamma);
  j["total_q_error"] = number(rep.total_q_error);
  j["nu"] = numbers(rep.nu);
  j["mu"] = numbers(rep.mu);
  j["residual"] = number(rep.residual);
  j["pass"] = rep.pass;
  j["converged"] = rep.converged;
  j["divergent"] = rep.divergent;
  j["tolerances"] = {{"residual", number(rep.tolerance)}, {"limit", number(rep.limit_tolerance)}};
  j["hypotheses"] = rep.hypotheses ? to_json(*rep.hypotheses) : ordered_json();
  j["fang_holds"] = rep.fang_holds ? ordered_json(*rep.fang_holds) : ordered_json();
  ordered_json values = ordered_json::object();
  for (const auto& [key, value] : rep.values) values[key] = number(value);
  j["values"] = values;
  j["diagnostics"] = rep.diagnostics;
  return j;
}

ordered_json to_json(const ConstancyReport& rep) {
  ordered_json j;
  j["alpha"] = number(rep.alpha);
  j["alpha_from_limit"] = number(rep.alpha_from_limit);
  j["C"] = number(rep.C);
  j["residual"] = number(rep.residual);
  j["total_q_over_gamma"] = number(rep.total_q_over_gamma);
  j["radii"] = numbers(rep.radii);
  j["w_minus_v"] = numbers(rep.w_minus_v);
  j["notes"] = rep.notes;
  return j;
}

std::string series_csv(const DefectReport& rep) {
  std::string out = "r,V_n,V_n_minus_1,C\n";
  const MixedVolumes& v = rep.volumes;
  for (std::size_t i = 0; i < v.r.size(); ++i) {
    const double C = i < rep.C.size() ? rep.C[i] : std::nan("");
    out += csv_number(v.r[i]) + ',' + csv_number(v.V_n[i]) + ',' + csv_number(v.V_n_minus_1[i]) + ',' +
           csv_number(C) + '\n';
  }
  return out;
}

}  // namespace qgb::io
