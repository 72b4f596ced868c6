#include "qgb/io/scenario.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qgb/curvature/constants.hpp"

namespace qgb::io {

namespace {

using nlohmann::json;

void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError("scenario: " + where + " must be an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw ConfigError("scenario: unknown key '" + key + "' in " + where);
}

double number(const json& j, const std::string& key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError("scenario: " + where + "." + key + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError("scenario: " + where + "." + key + " must be finite");
  return x;
}

double number_or(const json& j, const std::string& key, double fallback, const std::string& where) {
  return j.contains(key) ? number(j, key, where) : fallback;
}

int integer(const json& j, const std::string& key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError("scenario: " + where + "." + key + " must be an integer");
  return v.get<int>();
}

std::string text(const json& j, const std::string& key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_string()) throw ConfigError("scenario: " + where + "." + key + " must be a string");
  return v.get<std::string>();
}

std::vector<double> numbers(const json& j, const std::string& key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_array()) throw ConfigError("scenario: " + where + "." + key + " must be an array");
  std::vector<double> out;
  for (const json& x : v) {
    if (!x.is_number() || !std::isfinite(x.get<double>()))
      throw ConfigError("scenario: " + where + "." + key + " must hold finite numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

MetricSpec parse_metric(const json& j) {
  MetricSpec m;
  if (j.contains("catalog") == j.contains("construct"))
    throw ConfigError("scenario: metric needs exactly one of 'catalog' or 'construct'");
  if (j.contains("catalog")) {
    only_keys(j, {"catalog", "params"}, "metric");
    m.source = MetricSpec::Source::catalog;
    m.name = text(j, "catalog", "metric");
    if (j.contains("params")) m.params = numbers(j, "params", "metric");
    static const std::map<std::string, std::size_t> arity = {
        {"flat", 0}, {"cone", 1}, {"sphere", 0}, {"counterexample", 0}, {"cylinder", 0}};
    const auto it = arity.find(m.name);
    if (it == arity.end()) throw ConfigError("scenario: unknown catalog metric '" + m.name + "'");
    if (m.params.size() != it->second)
      throw ConfigError("scenario: catalog metric '" + m.name + "' takes " + std::to_string(it->second) +
                        " parameter(s)");
    return m;
  }
  const json& c = j.at("construct");
  only_keys(j, {"construct"}, "metric");
  only_keys(c, {"density", "mass", "width", "components", "cap_angle", "alpha", "C"}, "metric.construct");
  m.source = MetricSpec::Source::construct;
  m.name = text(c, "density", "metric.construct");
  m.alpha = number_or(c, "alpha", 0.0, "metric.construct");
  m.C = number_or(c, "C", 0.0, "metric.construct");
  if (m.name == "gaussian" || m.name == "capped_gaussian") {
    if (c.contains("components")) throw ConfigError("scenario: 'components' is only valid for gaussian_mixture");
    m.mass = number(c, "mass", "metric.construct");
    m.width = number_or(c, "width", 1.0, "metric.construct");
    if (!(m.width > 0.0)) throw ConfigError("scenario: width must be positive");
    if (m.name == "capped_gaussian") {
      if (c.contains("width")) throw ConfigError("scenario: capped_gaussian has unit width");
      m.cap_angle = number(c, "cap_angle", "metric.construct");
      if (!(m.cap_angle > 0.0 && m.cap_angle <= M_PI))
        throw ConfigError("scenario: cap_angle must lie in (0, pi]");
    } else if (c.contains("cap_angle")) {
      throw ConfigError("scenario: 'cap_angle' is only valid for capped_gaussian");
    }
  } else if (m.name == "gaussian_mixture") {
    for (const char* key : {"mass", "width", "cap_angle"})
      if (c.contains(key)) throw ConfigError(std::string("scenario: '") + key + "' is not valid for gaussian_mixture");
    const json& comps = c.at("components");
    if (!comps.is_array() || comps.empty()) throw ConfigError("scenario: components must be a non-empty array");
    for (const json& comp : comps) {
      only_keys(comp, {"mass", "width"}, "metric.construct.components[]");
      GaussianComponent g{number(comp, "mass", "component"), number_or(comp, "width", 1.0, "component")};
      if (!(g.width > 0.0)) throw ConfigError("scenario: component width must be positive");
      m.components.push_back(g);
      m.mass += g.mass_multiple;
    }
  } else {
    throw ConfigError("scenario: unknown density kind '" + m.name +
                      "' (expected gaussian, gaussian_mixture or capped_gaussian)");
  }
  return m;
}

QuadratureSpec parse_quadrature(const json& j) {
  only_keys(j, {"angular_nodes", "radial_nodes", "azimuthal_nodes", "r_lo", "r_hi"}, "quadrature");
  QuadratureSpec q;
  if (j.contains("angular_nodes")) q.angular_nodes = integer(j, "angular_nodes", "quadrature");
  if (j.contains("radial_nodes")) q.radial_nodes = integer(j, "radial_nodes", "quadrature");
  if (j.contains("azimuthal_nodes")) q.azimuthal_nodes = integer(j, "azimuthal_nodes", "quadrature");
  q.r_lo = number_or(j, "r_lo", q.r_lo, "quadrature");
  q.r_hi = number_or(j, "r_hi", q.r_hi, "quadrature");
  q.validate();
  return q;
}

}  // namespace

Scenario parse_scenario(const std::string& source) {
  json j;
  try {
    j = json::parse(source);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario: invalid JSON: ") + e.what());
  }
  only_keys(j, {"schema", "n", "metric", "topology", "quadrature", "tolerance", "R_values", "outputs"}, "scenario");
  if (!j.contains("schema") || text(j, "schema", "scenario") != schema_version)
    throw ConfigError(std::string("scenario: schema must be \"") + schema_version + "\"");
  for (const char* key : {"n", "metric"})
    if (!j.contains(key)) throw ConfigError(std::string("scenario: missing required key '") + key + "'");
  try {
    Scenario s;
    s.n = Dimension(integer(j, "n", "scenario")).value();
    s.metric = parse_metric(j.at("metric"));
    if (j.contains("topology")) s.topology = parse_topology(text(j, "topology", "scenario"));
    if (j.contains("quadrature")) s.quadrature = parse_quadrature(j.at("quadrature"));
    if (j.contains("tolerance")) {
      s.tolerance = number(j, "tolerance", "scenario");
      if (!(*s.tolerance > 0.0)) throw ConfigError("scenario: tolerance must be positive");
    }
    if (j.contains("R_values")) {
      s.R_values = numbers(j, "R_values", "scenario");
      for (double R : s.R_values)
        if (!(R > 0.0)) throw ConfigError("scenario: R_values must be positive");
    }
    if (j.contains("outputs")) {
      const json& o = j.at("outputs");
      only_keys(o, {"report", "series", "constancy", "limits"}, "outputs");
      if (o.contains("report")) s.outputs.report = text(o, "report", "outputs");
      if (o.contains("series")) s.outputs.series = text(o, "series", "outputs");
      if (o.contains("constancy")) s.outputs.constancy = text(o, "constancy", "outputs");
      if (o.contains("limits")) s.outputs.limits = text(o, "limits", "outputs");
    }
    s.hash = sha256_hex(source);
    return s;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("scenario: cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

ConformalMetric Scenario::build() const {
  const Dimension d(n);
  if (metric.source == MetricSpec::Source::catalog) return catalog(metric.name, d, metric.params);
  QDensity F = QDensity::zero(d);
  if (metric.name == "gaussian")
    F = QDensity::gaussian(d, metric.mass, metric.width);
  else if (metric.name == "gaussian_mixture")
    F = QDensity::gaussian_mixture(d, metric.components);
  else
    F = QDensity::capped_gaussian(d, metric.mass, metric.cap_angle, quadrature);
  return construct_normal(std::move(F), metric.alpha, metric.C, quadrature);
}

void Scenario::check_construction() const {
  const MetricSpec& m = metric;
  if (m.source != MetricSpec::Source::construct || topology != Topology::one_end_one_singularity) return;
  if (!(m.mass - m.alpha < 1.0))
    throw ConfigError("scenario: construction needs mass - alpha < 1 for a complete end at infinity");
  if (!(m.alpha > -1.0)) throw ConfigError("scenario: construction needs alpha > -1 for finite area at the origin");
}

std::optional<std::pair<double, double>> Scenario::expected_alpha_C() const {
  if (metric.source == MetricSpec::Source::construct) return std::pair{metric.alpha, metric.C};
  if (metric.name == "flat") return std::pair{0.0, 0.0};
  if (metric.name == "cone") return std::pair{metric.params.at(0), 0.0};
  if (metric.name == "cylinder") return std::pair{-1.0, 0.0};
  return std::nullopt;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) != 1 || EVP_DigestFinal_ex(ctx, digest, &length) != 1) {
    EVP_MD_CTX_free(ctx);
    throw std::runtime_error("sha256: digest failed");
  }
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

}  // namespace qgb::io
