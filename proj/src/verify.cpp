#include "ptbloch/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "ptbloch/assignment.hpp"
#include "ptbloch/errors.hpp"
#include "ptbloch/parallel.hpp"

namespace ptbloch::verify {

namespace {

constexpr double pi = std::numbers::pi;

double int_pow(double base, int e) {
  double r = 1.0;
  for (int j = 0; j < e; ++j) r *= base;
  return r;
}

double membership_slack(const Tolerances& tol, std::complex<double> lambda) {
  return tol.slack * (1.0 + std::abs(lambda));
}

std::string fmt(std::complex<double> z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}

/// Coupling sum S_k = sum_v sum_p (2*pi*p + pi*t)^(n-v) psi_p c_v(k-p).
std::complex<double> coupling_sum(const galerkin::EigenSolution& sol,
                                  const galerkin::EigenPair& pair,
                                  const ProblemSpec& spec, int k) {
  std::complex<double> sum(0.0, 0.0);
  for (const auto& [v, poly] : spec.coeffs()) {
    for (const auto& [m, c] : poly.coeffs()) {
      const int p = k - m;
      if (p < -sol.K || p > sol.K) continue;
      const double theta_p = 2.0 * pi * p + pi * sol.t;
      sum += int_pow(theta_p, spec.order() - v) * sol.psi(pair, p) * c;
    }
  }
  return sum;
}

}  // namespace

double odd_root(double x, int n) {
  if (x == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(x), 1.0 / n), x);
}

int cell_index(double re_lambda, double t, int n) {
  const double y = odd_root(re_lambda, n);
  return static_cast<int>(std::floor((y - pi * t + pi) / (2.0 * pi)));
}

Disk region_disk(const enclosure::EnclosureReport& report, int k) {
  if (report.small_c_disks && std::abs(k) <= report.window) {
    for (const auto& [kk, disk] : *report.small_c_disks) {
      if (kk == k) return disk;
    }
  }
  if (std::abs(k) <= report.window) {
    for (const auto& [kk, disk] : report.disks) {
      if (kk == k) return disk;
    }
  }
  return enclosure::localization_disk(k, report.t, report.C, report.n);
}

CheckRecord check_disk_localization(const galerkin::EigenSolution& sol,
                                    const enclosure::EnclosureReport& report,
                                    const Tolerances& tol) {
  CheckRecord record("disk_localization", sol.t, sol.eps, sol.K);
  double worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& pair : sol.pairs) {
    if (!sol.trusted(pair)) continue;
    const int k = cell_index(pair.lambda.real(), sol.t, report.n);
    if (std::abs(k) < report.N || std::abs(k) > sol.trusted_window) continue;
    const Disk disk = region_disk(report, k);
    const double dist = std::abs(pair.lambda - disk.center);
    const double allowed = disk.radius + membership_slack(tol, pair.lambda);
    ++record.checked;
    worst_margin = std::min(worst_margin, allowed - dist);
    if (dist >= allowed) {
      std::ostringstream os;
      os << "eigenvalue " << fmt(pair.lambda) << " in cell k=" << k
         << " misses its disk: distance " << dist << " >= " << allowed;
      record.fail(pair.lambda, os.str());
    }
  }
  if (record.checked > 0) record.stats["worst_margin"] = worst_margin;
  return record;
}

CheckRecord check_strip_im_bound(const galerkin::EigenSolution& sol,
                                 const enclosure::EnclosureReport& report,
                                 const Tolerances& tol) {
  CheckRecord record("strip_im_bound", sol.t, sol.eps, sol.K);
  double worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& pair : sol.pairs) {
    if (!sol.trusted(pair)) continue;
    if (!report.strip.contains(pair.lambda.real())) continue;
    const double allowed = report.rectangle.im_bound + membership_slack(tol, pair.lambda);
    const double im = std::abs(pair.lambda.imag());
    ++record.checked;
    worst_margin = std::min(worst_margin, allowed - im);
    if (im >= allowed) {
      std::ostringstream os;
      os << "strip eigenvalue " << fmt(pair.lambda) << " violates the Im bound "
         << report.rectangle.im_bound;
      record.fail(pair.lambda, os.str());
    }
  }
  if (record.checked > 0) record.stats["worst_margin"] = worst_margin;
  return record;
}

std::pair<CheckRecord, CheckRecord> check_disk_simplicity(
    const galerkin::EigenSolution& sol, const enclosure::EnclosureReport& report,
    const Tolerances& tol) {
  CheckRecord count("disk_count", sol.t, sol.eps, sol.K);
  CheckRecord reality("disk_reality", sol.t, sol.eps, sol.K);
  count.applicable = reality.applicable = (sol.eps == 1.0);
  double worst_im = 0.0;
  for (int a = report.N; a <= sol.trusted_window; ++a) {
    for (const int k : {-a, a}) {
      const Disk disk = region_disk(report, k);
      int inside = 0;
      ++count.checked;
      for (const auto& pair : sol.pairs) {
        if (!sol.trusted(pair)) continue;
        if (!disk.contains(pair.lambda, membership_slack(tol, pair.lambda))) continue;
        ++inside;
        ++reality.checked;
        const double im = std::abs(pair.lambda.imag());
        worst_im = std::max(worst_im, im / (1.0 + std::abs(pair.lambda)));
        if (im > tol.reality_tol * (1.0 + std::abs(pair.lambda))) {
          std::ostringstream os;
          os << "eigenvalue " << fmt(pair.lambda) << " in disk k=" << k
             << " is not real within tolerance";
          reality.fail(pair.lambda, os.str());
        }
      }
      if (inside != 1) {
        std::ostringstream os;
        os << "disk k=" << k << " holds " << inside << " trusted eigenvalues, expected 1";
        count.fail(disk.center, os.str());
      }
    }
  }
  reality.stats["worst_relative_im"] = worst_im;
  return {count, reality};
}

CheckRecord check_small_c_confinement(const galerkin::EigenSolution& sol,
                                      const enclosure::EnclosureReport& report,
                                      const Tolerances& tol) {
  if (!report.reality_holds || !report.small_c_disks) {
    throw config_error(
        "small-C confinement check requires C <= the reality threshold");
  }
  CheckRecord record("small_c_disk_confinement", sol.t, sol.eps, sol.K);
  record.applicable = (sol.eps == 1.0);

  for (const auto& pair : sol.pairs) {
    if (!sol.trusted(pair)) continue;
    const int k = cell_index(pair.lambda.real(), sol.t, report.n);
    int memberships = 0;
    for (int cand = k - 1; cand <= k + 1; ++cand) {
      if (region_disk(report, cand).contains(pair.lambda, membership_slack(tol, pair.lambda))) {
        ++memberships;
      }
    }
    ++record.checked;
    if (memberships != 1) {
      std::ostringstream os;
      os << "eigenvalue " << fmt(pair.lambda) << " lies in " << memberships
         << " disks near k=" << k << ", expected exactly 1";
      record.fail(pair.lambda, os.str());
    }
    if (std::abs(pair.lambda.imag()) > tol.reality_tol * (1.0 + std::abs(pair.lambda))) {
      std::ostringstream os;
      os << "eigenvalue " << fmt(pair.lambda) << " is not real within tolerance";
      record.fail(pair.lambda, os.str());
    }
  }
  for (int k = -sol.trusted_window; k <= sol.trusted_window; ++k) {
    const Disk disk = region_disk(report, k);
    int inside = 0;
    for (const auto& pair : sol.pairs) {
      if (!sol.trusted(pair)) continue;
      if (disk.contains(pair.lambda, membership_slack(tol, pair.lambda))) ++inside;
    }
    if (inside != 1) {
      std::ostringstream os;
      os << "disk k=" << k << " holds " << inside << " trusted eigenvalues, expected 1";
      record.fail(disk.center, os.str());
    }
  }
  return record;
}

std::vector<CheckRecord> check_coefficient_inequalities(
    const galerkin::EigenSolution& sol, const enclosure::EnclosureReport& report,
    const Tolerances& tol) {
  CheckRecord dominance("dominance", sol.t, sol.eps, sol.K);
  CheckRecord tail("tail_mass", sol.t, sol.eps, sol.K);
  CheckRecord strip_max("strip_max_coeff", sol.t, sol.eps, sol.K);

  double min_dominance = 1.0;
  double max_tail = 0.0;
  const double strip_max_bound = 3.0 / std::sqrt(10.0 * (2.0 * report.N + 1.0));

  for (const auto& pair : sol.pairs) {
    if (!sol.trusted(pair)) continue;
    const int k = cell_index(pair.lambda.real(), sol.t, report.n);
    const bool in_disk =
        std::abs(k) >= report.N && std::abs(k) <= sol.trusted_window &&
        region_disk(report, k).contains(pair.lambda, membership_slack(tol, pair.lambda));
    if (in_disk) {
      const double mag = std::abs(sol.psi(pair, k));
      ++dominance.checked;
      min_dominance = std::min(min_dominance, mag);
      if (mag <= 2.0 / 3.0 - tol.slack) {
        std::ostringstream os;
        os << "disk eigenpair k=" << k << " has |psi_k|=" << mag << " <= 2/3";
        dominance.fail(pair.lambda, os.str());
      }
    }
    if (report.strip.contains(pair.lambda.real())) {
      double tail_mass = 0.0;
      double max_coeff = 0.0;
      for (int p = -sol.K; p <= sol.K; ++p) {
        const double mag = std::abs(sol.psi(pair, p));
        if (std::abs(p) > report.N) {
          tail_mass += mag * mag;
        } else {
          max_coeff = std::max(max_coeff, mag);
        }
      }
      ++tail.checked;
      ++strip_max.checked;
      max_tail = std::max(max_tail, tail_mass);
      if (tail_mass >= 0.1 + tol.slack) {
        std::ostringstream os;
        os << "strip eigenpair " << fmt(pair.lambda) << " has tail mass " << tail_mass;
        tail.fail(pair.lambda, os.str());
      }
      if (max_coeff <= strip_max_bound - tol.slack) {
        std::ostringstream os;
        os << "strip eigenpair " << fmt(pair.lambda) << " has max coefficient "
           << max_coeff << " <= " << strip_max_bound;
        strip_max.fail(pair.lambda, os.str());
      }
    }
  }
  if (dominance.checked > 0) dominance.stats["min_dominance"] = min_dominance;
  if (tail.checked > 0) tail.stats["max_tail_mass"] = max_tail;
  return {dominance, tail, strip_max};
}

CheckRecord check_row_sum_bounds(const galerkin::EigenSolution& sol,
                                 const ProblemSpec& spec,
                                 const enclosure::EnclosureReport& report,
                                 const Tolerances& tol) {
  CheckRecord record("row_sum_bound", sol.t, sol.eps, sol.K);
  const int n = spec.order();
  const int interior = sol.K - spec.max_bandwidth();
  double worst_ratio = 0.0;
  for (const auto& pair : sol.pairs) {
    if (!sol.trusted(pair)) continue;
    for (int k = -interior; k <= interior; ++k) {
      const double magnitude = std::abs(coupling_sum(sol, pair, spec, k));
      const double theta_factor =
          (k != 0) ? int_pow(std::abs(2.0 * pi * k + pi * sol.t), n - 2) : int_pow(pi, n - 2);
      const double bound = theta_factor * report.C;
      ++record.checked;
      if (bound > 0.0) worst_ratio = std::max(worst_ratio, magnitude / bound);
      if (magnitude > bound * (1.0 + tol.slack)) {
        std::ostringstream os;
        os << "coupling sum at row k=" << k << " for eigenpair label "
           << pair.k_label << " is " << magnitude << " > bound " << bound;
        record.fail(pair.lambda, os.str());
      }
    }
  }
  record.stats["worst_ratio"] = worst_ratio;
  return record;
}

CheckRecord check_row_residual(const galerkin::EigenSolution& sol,
                               const ProblemSpec& spec, const Tolerances& tol) {
  CheckRecord record("row_residual", sol.t, sol.eps, sol.K);
  const int n = spec.order();
  const int interior = sol.K - spec.max_bandwidth();
  double worst = 0.0;
  for (const auto& pair : sol.pairs) {
    if (!sol.trusted(pair)) continue;
    for (int k = -interior; k <= interior; ++k) {
      const double theta_k = 2.0 * pi * k + pi * sol.t;
      const std::complex<double> lhs =
          (pair.lambda - int_pow(theta_k, n)) * sol.psi(pair, k);
      const std::complex<double> rhs = sol.eps * coupling_sum(sol, pair, spec, k);
      const double residual = std::abs(lhs - rhs);
      const double allowed = tol.residual_tol * (1.0 + std::abs(pair.lambda));
      ++record.checked;
      worst = std::max(worst, residual / (1.0 + std::abs(pair.lambda)));
      if (residual > allowed) {
        std::ostringstream os;
        os << "row k=" << k << " of eigenpair label " << pair.k_label
           << " has residual " << residual << " > " << allowed;
        record.fail(pair.lambda, os.str());
      }
    }
  }
  record.stats["worst_relative_residual"] = worst;
  return record;
}

CheckRecord check_conjugate_pairing(const galerkin::EigenSolution& sol,
                                    const Tolerances& tol) {
  CheckRecord record("conjugate_pairing", sol.t, sol.eps, sol.K);
  double worst = 0.0;
  for (const auto& pair : sol.pairs) {
    if (!sol.trusted(pair)) continue;
    const std::complex<double> conjugate = std::conj(pair.lambda);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& other : sol.pairs) {
      if (!sol.trusted(other)) continue;
      best = std::min(best, std::abs(conjugate - other.lambda));
    }
    ++record.checked;
    worst = std::max(worst, best / (1.0 + std::abs(pair.lambda)));
    if (best > tol.pairing_tol * (1.0 + std::abs(pair.lambda))) {
      std::ostringstream os;
      os << "no conjugate partner for " << fmt(pair.lambda) << " within " << best;
      record.fail(pair.lambda, os.str());
    }
  }
  record.stats["worst_pairing_defect"] = worst;
  return record;
}

CheckRecord check_leibniz_bound(int n, std::uint64_t seed, int samples) {
  CheckRecord record("leibniz_bound", 0.0, 1.0, 0);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_v(2, n);
  std::uniform_int_distribution<int> pick_bandwidth(0, 8);
  std::uniform_int_distribution<int> pick_k(-10, 10);
  std::uniform_real_distribution<double> pick_t(-1.0, 1.0);
  std::uniform_real_distribution<double> pick_coeff(-2.0, 2.0);
  std::bernoulli_distribution keep(0.7);

  for (int i = 0; i < samples; ++i) {
    const int v = pick_v(rng);
    const int bandwidth = pick_bandwidth(rng);
    FourierPoly::coeff_map coeffs;
    for (int m = -bandwidth; m <= bandwidth; ++m) {
      if (keep(rng)) coeffs[m] = pick_coeff(rng);
    }
    const ProblemSpec sample(n, {{v, FourierPoly(std::move(coeffs))}});
    const double theta = 2.0 * pi * pick_k(rng) + pi * pick_t(rng);
    const auto bound = enclosure::leibniz_norm_bound(v, theta, sample);
    ++record.checked;
    if (bound.lhs > bound.rhs * (1.0 + 1e-12)) {
      std::ostringstream os;
      os << "sample " << i << " (v=" << v << ", theta=" << theta
         << ") violates the norm bound: " << bound.lhs << " > " << bound.rhs;
      record.fail({bound.lhs, 0.0}, os.str());
    }
  }
  return record;
}

HomotopyTrace homotopy_trace(const ProblemSpec& spec, double t, int K,
                             const std::vector<double>& eps_grid,
                             const Tolerances& tol, int workers) {
  if (eps_grid.size() < 2 || eps_grid.front() != 0.0 || eps_grid.back() != 1.0) {
    throw config_error("eps grid must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < eps_grid.size(); ++i) {
    const double step = eps_grid[i] - eps_grid[i - 1];
    if (step <= 0.0 || step > 0.1 + 1e-12) {
      throw config_error("eps grid must be increasing with spacing <= 0.1");
    }
  }

  std::vector<galerkin::EigenSolution> sols(eps_grid.size());
  parallel_for(eps_grid.size(), workers, [&](std::size_t i) {
    sols[i] = galerkin::eigensystem(galerkin::assemble(spec, t, eps_grid[i], K));
  });

  const auto report = enclosure::make_report(spec, t);
  const int dim = 2 * K + 1;

  HomotopyTrace trace;
  trace.t = t;
  trace.K = K;
  trace.eps_grid = eps_grid;
  trace.labels.resize(dim);
  trace.trajectories.assign(dim, {});
  std::vector<int> cursor(dim);
  for (int j = 0; j < dim; ++j) {
    cursor[j] = j;
    trace.labels[j] = sols[0].pairs[j].k_label;  // eps = 0: label j - K exactly
    trace.trajectories[j].push_back(sols[0].pairs[j].lambda);
  }

  for (std::size_t i = 0; i + 1 < eps_grid.size(); ++i) {
    Eigen::MatrixXd cost(dim, dim);
    for (int a = 0; a < dim; ++a) {
      for (int b = 0; b < dim; ++b) {
        cost(a, b) = std::abs(sols[i].pairs[a].lambda - sols[i + 1].pairs[b].lambda);
      }
    }
    const std::vector<int> assignment = min_cost_assignment(cost);
    for (int j = 0; j < dim; ++j) {
      const int a = cursor[j];
      const int b = assignment[a];
      // Flag near-ties between the chosen partner and the runner-up.
      double second = std::numeric_limits<double>::infinity();
      for (int other = 0; other < dim; ++other) {
        if (other != b) second = std::min(second, cost(a, other));
      }
      const double scale = 1.0 + std::abs(sols[i].pairs[a].lambda);
      if (second - cost(a, b) < tol.ambiguity_tol * scale) {
        std::ostringstream os;
        os << "ambiguous match for trajectory label " << trace.labels[j]
           << " between eps=" << eps_grid[i] << " and eps=" << eps_grid[i + 1];
        trace.ambiguities.push_back(os.str());
      }
      cursor[j] = b;
      trace.trajectories[j].push_back(sols[i + 1].pairs[b].lambda);
    }
  }

  const int W = sols[0].trusted_window;
  trace.containment =
      CheckRecord("homotopy_containment", t, 1.0, K);
  for (int j = 0; j < dim; ++j) {
    const int label = trace.labels[j];
    if (std::abs(label) > W) continue;
    const bool disk_route = std::abs(label) >= report.N;
    const Disk disk = disk_route ? region_disk(report, label) : Disk{};
    for (std::size_t i = 0; i < eps_grid.size(); ++i) {
      const std::complex<double> lambda = trace.trajectories[j][i];
      ++trace.containment.checked;
      const bool ok = disk_route
                          ? disk.contains(lambda, membership_slack(tol, lambda))
                          : report.rectangle.contains(lambda, membership_slack(tol, lambda));
      if (!ok) {
        std::ostringstream os;
        os << "trajectory label " << label << " exits its "
           << (disk_route ? "disk" : "rectangle") << " at eps=" << eps_grid[i];
        trace.containment.fail(lambda, os.str());
      }
    }
  }

  trace.count_preservation =
      CheckRecord("homotopy_counts", t, 1.0, K);
  for (int a = report.N; a <= W; ++a) {
    for (const int k : {-a, a}) {
      const Disk disk = region_disk(report, k);
      int at_start = 0;
      int at_end = 0;
      for (const auto& pair : sols.front().pairs) {
        if (disk.contains(pair.lambda, membership_slack(tol, pair.lambda))) ++at_start;
      }
      for (const auto& pair : sols.back().pairs) {
        if (disk.contains(pair.lambda, membership_slack(tol, pair.lambda))) ++at_end;
      }
      ++trace.count_preservation.checked;
      if (at_start != at_end) {
        std::ostringstream os;
        os << "disk k=" << k << " holds " << at_start << " eigenvalues at eps=0 but "
           << at_end << " at eps=1";
        trace.count_preservation.fail(disk.center, os.str());
      }
    }
  }
  return trace;
}

std::map<std::string, bool> VerificationReport::summary() const {
  std::map<std::string, bool> out;
  for (const auto& record : records) {
    const bool ok = !record.applicable || record.pass;
    auto it = out.find(record.name);
    if (it == out.end()) {
      out[record.name] = ok;
    } else {
      it->second = it->second && ok;
    }
  }
  return out;
}

bool VerificationReport::all_pass() const {
  for (const auto& record : records) {
    if (record.applicable && !record.pass) return false;
  }
  return true;
}

VerificationReport run_verification(const ProblemSpec& spec,
                                    const std::vector<double>& t_values, int K,
                                    const Tolerances& tol, std::uint64_t seed,
                                    int workers) {
  std::vector<galerkin::EigenSolution> sols(t_values.size());
  std::vector<enclosure::EnclosureReport> reports(t_values.size());
  parallel_for(t_values.size(), workers, [&](std::size_t i) {
    sols[i] = galerkin::eigensystem(galerkin::assemble(spec, t_values[i], 1.0, K));
    reports[i] = enclosure::make_report(spec, t_values[i]);
  });

  VerificationReport out;
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    const auto& sol = sols[i];
    const auto& report = reports[i];
    out.records.push_back(check_disk_localization(sol, report, tol));
    out.records.push_back(check_strip_im_bound(sol, report, tol));
    auto [count, reality] = check_disk_simplicity(sol, report, tol);
    out.records.push_back(std::move(count));
    out.records.push_back(std::move(reality));
    if (report.reality_holds) {
      out.records.push_back(check_small_c_confinement(sol, report, tol));
    } else {
      CheckRecord skipped("small_c_disk_confinement", sol.t, sol.eps, sol.K);
      skipped.applicable = false;
      out.records.push_back(std::move(skipped));
    }
    for (auto& record : check_coefficient_inequalities(sol, report, tol)) {
      out.records.push_back(std::move(record));
    }
    out.records.push_back(check_row_sum_bounds(sol, spec, report, tol));
    out.records.push_back(check_row_residual(sol, spec, tol));
    out.records.push_back(check_conjugate_pairing(sol, tol));

    const auto disjoint = enclosure::disjointness_certificate(report);
    CheckRecord geometry("region_disjointness", sol.t, sol.eps, sol.K);
    geometry.checked = static_cast<int>(report.disks.size());
    geometry.pass = disjoint.pass;
    for (const auto& witness : disjoint.witnesses) {
      geometry.witnesses.push_back({{0.0, 0.0}, witness});
    }
    out.records.push_back(std::move(geometry));
  }
  out.records.push_back(check_leibniz_bound(spec.order(), seed, 200));
  return out;
}

}  // namespace ptbloch::verify
