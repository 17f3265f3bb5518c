#include "ptbloch/cli.hpp"

#include <cmath>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ptbloch/bands.hpp"
#include "ptbloch/config.hpp"
#include "ptbloch/enclosure.hpp"
#include "ptbloch/errors.hpp"
#include "ptbloch/galerkin.hpp"
#include "ptbloch/report_io.hpp"
#include "ptbloch/verify.hpp"

namespace ptbloch::cli {

using nlohmann::json;

namespace {

struct Overrides {
  std::string config_path;
  std::optional<double> t;
  std::optional<int> t_steps;
  std::optional<int> K;
  std::optional<int> eps_steps;
  std::optional<std::string> out_dir;
  bool svg = false;
  std::optional<int> workers;
  std::optional<std::uint64_t> seed;
};

void add_common_options(CLI::App* cmd, Overrides& over) {
  cmd->add_option("--config", over.config_path, "path to the run configuration (JSON)")
      ->required();
  cmd->add_option("--t", over.t, "quasimomentum in (-1, 1]");
  cmd->add_option("--t-steps", over.t_steps, "number of t grid points over (-1, 1]");
  cmd->add_option("--K", over.K, "truncation half-width");
  cmd->add_option("--eps-steps", over.eps_steps, "number of eps grid points over [0, 1]");
  cmd->add_option("--out", over.out_dir, "output directory");
  cmd->add_flag("--svg", over.svg, "emit SVG plots");
  cmd->add_option("--workers", over.workers, "concurrent eigensolve jobs");
  cmd->add_option("--seed", over.seed, "seed for randomized property-test corpora");
}

RunConfig load_config(const Overrides& over) {
  RunConfig config = parse_config_file(over.config_path);
  if (over.t) {
    if (!(*over.t > -1.0 && *over.t <= 1.0)) throw config_error("--t must lie in (-1, 1]");
    config.t = over.t;
  }
  if (over.t_steps) {
    if (*over.t_steps < 1) throw config_error("--t-steps must be >= 1");
    config.t_steps = *over.t_steps;
    if (over.t_steps && !over.t) config.t.reset();
  }
  if (over.K) {
    if (*over.K < 1) throw config_error("--K must be >= 1");
    if (*over.K > config.window_cap()) {
      throw config_error("--K exceeds the precision cap " +
                         std::to_string(config.window_cap()));
    }
    config.K = over.K;
  }
  if (over.eps_steps) {
    if (*over.eps_steps < 11) throw config_error("--eps-steps must be >= 11");
    config.eps_steps = *over.eps_steps;
  }
  if (over.out_dir) config.output.dir = *over.out_dir;
  if (over.svg) config.output.svg = true;
  if (over.workers) config.workers = *over.workers;
  if (over.seed) config.seed = *over.seed;
  return config;
}

int window_for(const RunConfig& config, int N) {
  const int window = config.report_window.value_or(enclosure::default_window(N));
  return std::min(window, config.window_cap());
}

int run_enclose(const RunConfig& config) {
  const ProblemSpec spec = config.problem();
  json doc;
  doc["schema"] = 1;
  json reports = json::array();
  for (const double t : config.t_values()) {
    const auto report = enclosure::make_report(
        spec, t, window_for(config, enclosure::strip_index(
                                        enclosure::perturbation_constant(spec))));
    reports.push_back(io::enclosure_json(report));
  }
  doc["reports"] = std::move(reports);

  io::OutputSet out(config.output.dir);
  try {
    out.write("enclosure.json", doc.dump(2) + "\n");
  } catch (...) {
    out.discard();
    throw;
  }
  std::cout << "wrote enclosure.json (" << config.t_values().size() << " t values)\n";
  return 0;
}

int run_eigs(const RunConfig& config) {
  const ProblemSpec spec = config.problem();
  const double t = config.single_t();
  const int K = config.truncation(spec);
  const auto sol = galerkin::eigensystem(galerkin::assemble(spec, t, 1.0, K));
  const auto trunc = galerkin::truncation_error_estimate(spec, t, 1.0, K);

  io::OutputSet out(config.output.dir);
  try {
    out.write("eigs.csv", io::eigen_solution_csv(sol, trunc));
  } catch (...) {
    out.discard();
    throw;
  }
  std::cout << "wrote eigs.csv (t=" << t << ", K=" << K << ", " << sol.pairs.size()
            << " eigenvalues)\n";
  return 0;
}

int run_verify(const RunConfig& config) {
  const ProblemSpec spec = config.problem();
  const int K = config.truncation(spec);
  const auto report = verify::run_verification(spec, config.t_values(), K,
                                               config.tolerances, config.seed,
                                               config.workers);

  io::OutputSet out(config.output.dir);
  try {
    out.write("verification.json", io::verification_json(report).dump(2) + "\n");
    if (config.output.text) {
      out.write("verification.txt", io::verification_table(report));
    }
  } catch (...) {
    out.discard();
    throw;
  }
  std::cout << io::verification_table(report);
  return report.all_pass() ? 0 : 2;
}

int run_bands(const RunConfig& config) {
  const ProblemSpec spec = config.problem();
  const int K = config.truncation(spec);
  const auto grid = bands::make_t_grid(config.t_steps);
  const auto bs = bands::sweep(spec, grid, K, 1.0, config.tolerances, config.workers);

  // Regions are overlaid at the grid point closest to the configured t.
  const double t_anchor = config.single_t();
  int overlay = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (std::abs(grid[i] - t_anchor) < std::abs(grid[overlay] - t_anchor)) {
      overlay = static_cast<int>(i);
    }
  }
  const auto report = enclosure::make_report(
      spec, grid[overlay],
      window_for(config,
                 enclosure::strip_index(enclosure::perturbation_constant(spec))));

  const auto coverage = bands::real_coverage_check(bs, report, config.tolerances);
  const auto rectangle = bands::nonreal_arcs_in_rectangle(bs, report, config.tolerances);
  const auto pairing = bands::conjugate_arc_pairing(bs, config.tolerances);

  int nonreal_arcs = 0;
  for (const auto& arc : bs.arcs()) {
    if (!arc.real && bs.trusted(bs.bands[arc.band])) ++nonreal_arcs;
  }

  json summary;
  summary["schema"] = 1;
  summary["K"] = K;
  summary["eps"] = bs.eps;
  summary["trusted_window"] = bs.trusted_window;
  summary["grid_points"] = bs.t_grid.size();
  summary["bands"] = bs.bands.size();
  summary["nonreal_arcs"] = nonreal_arcs;
  summary["degeneracies"] = bs.degeneracies.size();
  summary["stitch_warnings"] = bs.stitch_warnings;
  summary["checks"] = {{"real_coverage", coverage.pass},
                       {"nonreal_in_rectangle", rectangle.pass},
                       {"conjugate_arcs", pairing.pass}};
  summary["records"] = {io::check_record_json(coverage), io::check_record_json(rectangle),
                        io::check_record_json(pairing)};

  io::OutputSet out(config.output.dir);
  try {
    out.write("bands.csv", io::band_csv(bs));
    out.write("bands_summary.json", summary.dump(2) + "\n");
    if (config.output.svg) out.write("bands.svg", io::bands_svg(bs, report, overlay));
  } catch (...) {
    out.discard();
    throw;
  }
  std::cout << "bands: " << bs.bands.size() << " bands over " << bs.t_grid.size()
            << " grid points, " << nonreal_arcs << " nonreal arcs (trusted)\n"
            << "checks: coverage=" << (coverage.pass ? "pass" : "FAIL")
            << " rectangle=" << (rectangle.pass ? "pass" : "FAIL")
            << " conjugate-arcs=" << (pairing.pass ? "pass" : "FAIL") << "\n";
  return 0;
}

int run_homotopy(const RunConfig& config) {
  const ProblemSpec spec = config.problem();
  const int K = config.truncation(spec);
  const double t = config.single_t();
  const auto trace =
      verify::homotopy_trace(spec, t, K, bands::make_eps_grid(config.eps_steps),
                             config.tolerances, config.workers);

  json summary;
  summary["schema"] = 1;
  summary["t"] = trace.t;
  summary["K"] = trace.K;
  summary["trajectories"] = trace.trajectories.size();
  summary["ambiguities"] = trace.ambiguities;
  summary["checks"] = {{"containment", trace.containment.pass},
                       {"count_preservation", trace.count_preservation.pass}};
  summary["records"] = {io::check_record_json(trace.containment),
                        io::check_record_json(trace.count_preservation)};

  io::OutputSet out(config.output.dir);
  try {
    out.write("homotopy.csv", io::homotopy_csv(trace));
    out.write("homotopy_summary.json", summary.dump(2) + "\n");
  } catch (...) {
    out.discard();
    throw;
  }
  std::cout << "homotopy: " << trace.trajectories.size() << " trajectories over "
            << trace.eps_grid.size() << " eps points; containment="
            << (trace.containment.pass ? "pass" : "FAIL") << " counts="
            << (trace.count_preservation.pass ? "pass" : "FAIL") << "\n";
  return trace.pass() ? 0 : 2;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Bloch eigenvalues and spectral enclosures of odd-order periodic "
               "operators with PT-symmetric coefficients"};
  app.require_subcommand(1);

  Overrides over;
  CLI::App* enclose = app.add_subcommand("enclose", "compute the enclosure regions");
  CLI::App* eigs = app.add_subcommand("eigs", "eigenvalues of the truncated operator");
  CLI::App* verify_cmd = app.add_subcommand("verify", "run every localization check");
  CLI::App* bands_cmd = app.add_subcommand("bands", "band structure over a t grid");
  CLI::App* homotopy = app.add_subcommand("homotopy", "track eigenvalues over eps");
  for (CLI::App* cmd : {enclose, eigs, verify_cmd, bands_cmd, homotopy}) {
    add_common_options(cmd, over);
  }

  // CLI11 wants argv in reverse order without the program name.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& err) {
    return app.exit(err);
  }

  try {
    const RunConfig config = load_config(over);
    if (enclose->parsed()) return run_enclose(config);
    if (eigs->parsed()) return run_eigs(config);
    if (verify_cmd->parsed()) return run_verify(config);
    if (bands_cmd->parsed()) return run_bands(config);
    return run_homotopy(config);
  } catch (const config_error& err) {
    std::cerr << "configuration error: " << err.what() << "\n";
    return 1;
  } catch (const precision_error& err) {
    std::cerr << "precision error: " << err.what() << "\n";
    return 1;
  } catch (const numeric_error& err) {
    std::cerr << "numeric error: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}

}  // namespace ptbloch::cli
