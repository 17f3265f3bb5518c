#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ptbloch/problem.hpp"
#include "ptbloch/verify.hpp"

namespace ptbloch::cli {

struct OutputOptions {
  std::string dir = ".";
  bool csv = true;
  bool text = true;
  bool svg = false;
};

/// Parsed run configuration (schema version 1).  Coefficients arrive as
/// (v, m, re, im) quadruples and are validated on parse: odd n > 1, v in 2..n,
/// no duplicate (v, m), and |im| <= 1e-12 (PT-symmetry).
struct RunConfig {
  int n = 3;
  std::map<int, FourierPoly> coefficients;
  std::optional<int> K;
  std::optional<double> t;
  int t_steps = 81;
  int eps_steps = 11;
  verify::Tolerances tolerances;
  OutputOptions output;
  std::optional<int> report_window;
  int workers = 0;  // 0 = hardware concurrency
  std::uint64_t seed = 0;
  bool unsafe_precision = false;

  ProblemSpec problem() const { return ProblemSpec(n, coefficients); }

  /// The single-t commands use `t` (default 0); grid commands use `t` when
  /// given, else a t_steps grid.
  double single_t() const { return t.value_or(0.0); }
  std::vector<double> t_values() const;

  /// K override, else max(4N+8, 3*bandwidth+8).
  int truncation(const ProblemSpec& spec) const;

  /// Disk-window cap: 200 by default, the precision limit with unsafe_precision.
  int window_cap() const;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_file(const std::string& path);
nlohmann::json serialize_config(const RunConfig& config);

}  // namespace ptbloch::cli
