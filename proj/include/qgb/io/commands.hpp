#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qgb/io/scenario.hpp"
#include "qgb/kernel/kernel.hpp"

namespace qgb::io {

/** Process exit codes shared by all subcommands. */
enum ExitCode : int { exit_pass = 0, exit_fail = 1, exit_config = 2, exit_numerical = 3 };

struct CommandResult {
  int exit_code = exit_pass;
  nlohmann::ordered_json report;
  std::string csv;  // series export (cgb only)
};

/** Kernel identities for each dimension; an empty list means {4, 6, 8}. */
CommandResult run_verify_kernels(std::vector<int> dims, const QuadratureSpec& spec = {},
                                 std::optional<double> tolerance = std::nullopt);
CommandResult run_cgb(const Scenario& s, std::optional<double> tolerance = std::nullopt);
CommandResult run_reconstruct(const Scenario& s, std::optional<double> tolerance = std::nullopt);
CommandResult run_limits(const Scenario& s, std::optional<double> tolerance = std::nullopt);

/** JSON value for a double; non-finite values become "inf", "-inf" or "nan". */
nlohmann::ordered_json number(double x);
/** Two-space indented document with a trailing newline. */
std::string dump(const nlohmann::ordered_json& j);

nlohmann::ordered_json to_json(const HypothesisVerdict& h);
nlohmann::ordered_json to_json(const DefectReport& rep);
nlohmann::ordered_json to_json(const ConstancyReport& rep);
nlohmann::ordered_json to_json(const LimitEstimate& e);
nlohmann::ordered_json to_json(const QuadratureSpec& q);

/** r,V_n,V_n_minus_1,C rows with '.' decimals and LF line ends. */
std::string series_csv(const DefectReport& rep);

}  // namespace qgb::io
