#include "ptbloch/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ptbloch/bands.hpp"
#include "ptbloch/enclosure.hpp"
#include "ptbloch/errors.hpp"

namespace ptbloch::cli {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& message) {
  throw config_error("config " + path + ": " + message);
}

void require_object(const json& value, const std::string& path,
                    const std::set<std::string>& allowed) {
  if (!value.is_object()) bad(path, "expected an object");
  for (const auto& [key, sub] : value.items()) {
    if (!allowed.count(key)) bad(path + "." + key, "unknown field");
  }
}

double get_number(const json& obj, const std::string& path, const char* key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& value = obj.at(key);
  if (!value.is_number()) bad(path + "." + key, "expected a number");
  return value.get<double>();
}

int get_int(const json& obj, const std::string& path, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& value = obj.at(key);
  if (!value.is_number_integer()) bad(path + "." + key, "expected an integer");
  return value.get<int>();
}

bool get_bool(const json& obj, const std::string& path, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& value = obj.at(key);
  if (!value.is_boolean()) bad(path + "." + key, "expected a boolean");
  return value.get<bool>();
}

}  // namespace

std::vector<double> RunConfig::t_values() const {
  if (t) return {*t};
  return bands::make_t_grid(t_steps);
}

int RunConfig::truncation(const ProblemSpec& spec) const {
  if (K) return *K;
  const int N = enclosure::strip_index(enclosure::perturbation_constant(spec));
  return std::max(4 * N + 8, 3 * spec.max_bandwidth() + 8);
}

int RunConfig::window_cap() const {
  return unsafe_precision ? enclosure::max_index : 200;
}

RunConfig parse_config(const json& doc) {
  require_object(doc, "$",
                 {"schema", "n", "coefficients", "K", "t", "t_steps", "eps_steps",
                  "tolerances", "output", "report_window", "workers", "seed",
                  "unsafe_precision"});
  const int schema = get_int(doc, "$", "schema", 1);
  if (schema != 1) bad("$.schema", "unsupported schema version " + std::to_string(schema));

  RunConfig config;
  if (!doc.contains("n")) bad("$.n", "missing required field");
  config.n = get_int(doc, "$", "n", 3);
  if (config.n <= 1 || config.n % 2 == 0) bad("$.n", "n must be odd and > 1");

  if (doc.contains("coefficients")) {
    const json& coeffs = doc.at("coefficients");
    if (!coeffs.is_array()) bad("$.coefficients", "expected an array");
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      const std::string path = "$.coefficients[" + std::to_string(i) + "]";
      require_object(coeffs[i], path, {"v", "terms"});
      if (!coeffs[i].contains("v")) bad(path + ".v", "missing required field");
      const int v = get_int(coeffs[i], path, "v", 0);
      if (v < 2 || v > config.n) {
        bad(path + ".v", "v must lie in 2.." + std::to_string(config.n));
      }
      if (config.coefficients.count(v)) bad(path + ".v", "duplicate coefficient v");
      FourierPoly::coeff_map terms;
      if (coeffs[i].contains("terms")) {
        const json& list = coeffs[i].at("terms");
        if (!list.is_array()) bad(path + ".terms", "expected an array");
        for (std::size_t j = 0; j < list.size(); ++j) {
          const std::string term_path = path + ".terms[" + std::to_string(j) + "]";
          require_object(list[j], term_path, {"m", "re", "im"});
          if (!list[j].contains("m")) bad(term_path + ".m", "missing required field");
          const int m = get_int(list[j], term_path, "m", 0);
          const double re = get_number(list[j], term_path, "re", 0.0);
          const double im = get_number(list[j], term_path, "im", 0.0);
          if (terms.count(m)) {
            std::ostringstream os;
            os << "duplicate term (v=" << v << ", m=" << m << ")";
            bad(term_path, os.str());
          }
          if (std::abs(im) > ProblemSpec::pt_tol) {
            std::ostringstream os;
            os << "coefficient not PT-symmetric: term (v=" << v << ", m=" << m
               << ") has |im|=" << std::abs(im) << " > 1e-12";
            bad(term_path, os.str());
          }
          terms[m] = {re, im};
        }
      }
      config.coefficients.emplace(v, FourierPoly(std::move(terms)));
    }
  }

  if (doc.contains("K")) {
    config.K = get_int(doc, "$", "K", 0);
    if (*config.K < 1) bad("$.K", "K must be >= 1");
  }
  if (doc.contains("t")) {
    const double t = get_number(doc, "$", "t", 0.0);
    if (!(t > -1.0 && t <= 1.0)) bad("$.t", "t must lie in (-1, 1]");
    config.t = t;
  }
  config.t_steps = get_int(doc, "$", "t_steps", 81);
  if (config.t_steps < 1) bad("$.t_steps", "t_steps must be >= 1");
  config.eps_steps = get_int(doc, "$", "eps_steps", 11);
  if (config.eps_steps < 11) {
    bad("$.eps_steps", "eps_steps must be >= 11 (grid spacing <= 0.1)");
  }

  if (doc.contains("tolerances")) {
    const json& tols = doc.at("tolerances");
    require_object(tols, "$.tolerances",
                   {"slack", "reality_tol", "pairing_tol", "residual_tol",
                    "coverage_gap_tol", "ambiguity_tol", "degeneracy_tol"});
    auto& out = config.tolerances;
    out.slack = get_number(tols, "$.tolerances", "slack", out.slack);
    out.reality_tol = get_number(tols, "$.tolerances", "reality_tol", out.reality_tol);
    out.pairing_tol = get_number(tols, "$.tolerances", "pairing_tol", out.pairing_tol);
    out.residual_tol = get_number(tols, "$.tolerances", "residual_tol", out.residual_tol);
    out.coverage_gap_tol =
        get_number(tols, "$.tolerances", "coverage_gap_tol", out.coverage_gap_tol);
    out.ambiguity_tol = get_number(tols, "$.tolerances", "ambiguity_tol", out.ambiguity_tol);
    out.degeneracy_tol =
        get_number(tols, "$.tolerances", "degeneracy_tol", out.degeneracy_tol);
    for (const double value : {out.slack, out.reality_tol, out.pairing_tol,
                               out.residual_tol, out.coverage_gap_tol,
                               out.ambiguity_tol, out.degeneracy_tol}) {
      if (!(value > 0.0)) bad("$.tolerances", "all tolerances must be positive");
    }
  }

  if (doc.contains("output")) {
    const json& output = doc.at("output");
    require_object(output, "$.output", {"dir", "csv", "text", "svg"});
    if (output.contains("dir")) {
      if (!output.at("dir").is_string()) bad("$.output.dir", "expected a string");
      config.output.dir = output.at("dir").get<std::string>();
    }
    config.output.csv = get_bool(output, "$.output", "csv", config.output.csv);
    config.output.text = get_bool(output, "$.output", "text", config.output.text);
    config.output.svg = get_bool(output, "$.output", "svg", config.output.svg);
  }

  if (doc.contains("report_window")) {
    config.report_window = get_int(doc, "$", "report_window", 0);
    if (*config.report_window < 1) bad("$.report_window", "report_window must be >= 1");
  }
  config.workers = get_int(doc, "$", "workers", 0);
  if (config.workers < 0) bad("$.workers", "workers must be >= 0");
  if (doc.contains("seed")) {
    const json& value = doc.at("seed");
    if (!value.is_number_unsigned() && !value.is_number_integer()) {
      bad("$.seed", "expected an integer");
    }
    config.seed = value.get<std::uint64_t>();
  }
  config.unsafe_precision = get_bool(doc, "$", "unsafe_precision", false);

  if (!config.unsafe_precision && config.n > enclosure::max_order) {
    bad("$.n", "n > 9 exceeds the double-precision budget");
  }
  const int cap = config.window_cap();
  if (config.K && *config.K > cap) {
    bad("$.K", "K exceeds the precision cap " + std::to_string(cap) +
                   " (set unsafe_precision to override)");
  }
  if (config.report_window && *config.report_window > cap) {
    bad("$.report_window", "window exceeds the precision cap " + std::to_string(cap) +
                               " (set unsafe_precision to override)");
  }

  config.problem();  // surfaces range/PT violations not caught field-by-field
  return config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& err) {
    throw config_error("config " + path + ": " + err.what());
  }
  return parse_config(doc);
}

json serialize_config(const RunConfig& config) {
  json doc;
  doc["schema"] = 1;
  doc["n"] = config.n;
  json coeffs = json::array();
  for (const auto& [v, poly] : config.coefficients) {
    json entry;
    entry["v"] = v;
    json terms = json::array();
    for (const auto& [m, c] : poly.coeffs()) {
      terms.push_back({{"m", m}, {"re", c.real()}, {"im", c.imag()}});
    }
    entry["terms"] = std::move(terms);
    coeffs.push_back(std::move(entry));
  }
  doc["coefficients"] = std::move(coeffs);
  if (config.K) doc["K"] = *config.K;
  if (config.t) doc["t"] = *config.t;
  doc["t_steps"] = config.t_steps;
  doc["eps_steps"] = config.eps_steps;
  doc["tolerances"] = {{"slack", config.tolerances.slack},
                       {"reality_tol", config.tolerances.reality_tol},
                       {"pairing_tol", config.tolerances.pairing_tol},
                       {"residual_tol", config.tolerances.residual_tol},
                       {"coverage_gap_tol", config.tolerances.coverage_gap_tol},
                       {"ambiguity_tol", config.tolerances.ambiguity_tol},
                       {"degeneracy_tol", config.tolerances.degeneracy_tol}};
  doc["output"] = {{"dir", config.output.dir},
                   {"csv", config.output.csv},
                   {"text", config.output.text},
                   {"svg", config.output.svg}};
  if (config.report_window) doc["report_window"] = *config.report_window;
  doc["workers"] = config.workers;
  doc["seed"] = config.seed;
  doc["unsafe_precision"] = config.unsafe_precision;
  return doc;
}

}  // namespace ptbloch::cli
