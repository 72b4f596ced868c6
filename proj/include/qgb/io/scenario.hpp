#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qgb/cgb/cgb.hpp"
#include "qgb/metrics/density.hpp"
#include "qgb/metrics/metric.hpp"

namespace qgb::io {

inline constexpr const char* schema_version = "qgb/1";

/** Metric section: a catalog entry or a generalised normal metric built from a density. */
struct MetricSpec {
  enum class Source { catalog, construct };
  Source source = Source::catalog;
  std::string name;            // catalog name, or density kind for constructions
  std::vector<double> params;  // catalog parameters
  // constructions
  double mass = 0.0;  // multiple of gamma_n
  double width = 1.0;
  double cap_angle = 0.0;
  std::vector<GaussianComponent> components;
  double alpha = 0.0;
  double C = 0.0;
};

struct OutputPaths {
  std::string report = "report.json";
  std::string series = "series.csv";
  std::string constancy = "constancy.json";
  std::string limits = "limits.json";
};

struct Scenario {
  int n = 4;
  MetricSpec metric;
  Topology topology = Topology::one_end_one_singularity;
  QuadratureSpec quadrature;
  std::optional<double> tolerance;
  std::vector<double> R_values;
  OutputPaths outputs;
  std::string hash;  // SHA-256 of the scenario bytes

  ConformalMetric build() const;
  /** Completeness and finite-area preconditions of a constructed one-end metric; throws ConfigError. */
  void check_construction() const;
  /** Known (alpha, C) of the exact normal-metric form, when the scenario determines them. */
  std::optional<std::pair<double, double>> expected_alpha_C() const;
};

/** Parses and validates a scenario document; throws ConfigError. */
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

std::string sha256_hex(const std::string& bytes);

}  // namespace qgb::io
