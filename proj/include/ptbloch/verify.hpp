#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ptbloch/enclosure.hpp"
#include "ptbloch/galerkin.hpp"

namespace ptbloch::verify {

/// Every tolerance used by the checks; nothing is hard-coded inside them.
struct Tolerances {
  double slack = 1e-6;             // region-membership slack, relative
  double reality_tol = 1e-7;       // |Im| <= reality_tol*(1+|lambda|) counts as real
  double pairing_tol = 1e-8;       // conjugate-pair matching, relative
  double residual_tol = 1e-8;      // eigen-equation row residual, relative
  double coverage_gap_tol = 1e-3;  // coverage gaps, fraction of local band width
  double ambiguity_tol = 1e-12;    // continuation-matching ambiguity flag
  double degeneracy_tol = 1e-9;    // band-collision flag, relative
};

struct Witness {
  std::complex<double> lambda{0.0, 0.0};
  std::string detail;
};

struct CheckRecord {
  std::string name;
  double t = 0.0;
  double eps = 1.0;
  int K = 0;
  bool applicable = true;  // false when the hypothesis of the statement fails
  bool pass = true;
  int checked = 0;  // how many memberships / rows / pairs were examined
  std::vector<Witness> witnesses;
  std::map<std::string, double> stats;

  CheckRecord() = default;
  CheckRecord(std::string name_, double t_, double eps_, int K_)
      : name(std::move(name_)), t(t_), eps(eps_), K(K_) {}

  void fail(std::complex<double> lambda, std::string detail) {
    pass = false;
    witnesses.push_back({lambda, std::move(detail)});
  }
};

/// Sign-preserving real n-th root for odd n.
double odd_root(double x, int n);

/// Index k of the Re-axis cell containing re_lambda at quasimomentum t.
int cell_index(double re_lambda, double t, int n);

/// The disk the checks attribute to index k: the reported small-C disk for
/// |k| <= 1 when present, the reported disk inside the window, and the
/// formula value outside it.  Reading the report keeps forged reports
/// falsifiable in negative-control tests.
Disk region_disk(const enclosure::EnclosureReport& report, int k);

/// Trusted eigenvalues whose Re falls in a cell with strip_index <= |k| <=
/// trusted window must lie in the matching disk.
CheckRecord check_disk_localization(const galerkin::EigenSolution& sol,
                                    const enclosure::EnclosureReport& report,
                                    const Tolerances& tol);

/// Trusted eigenvalues with Re in the central strip obey the Im bound.
CheckRecord check_strip_im_bound(const galerkin::EigenSolution& sol,
                                 const enclosure::EnclosureReport& report,
                                 const Tolerances& tol);

/// At eps = 1 each disk with strip_index <= |k| <= trusted window holds
/// exactly one trusted eigenvalue (first record) and that eigenvalue is real
/// within reality_tol (second record).
std::pair<CheckRecord, CheckRecord> check_disk_simplicity(
    const galerkin::EigenSolution& sol, const enclosure::EnclosureReport& report,
    const Tolerances& tol);

/// Small-C regime: every trusted eigenvalue sits in exactly one disk of the
/// small-C family, each such disk inside the trusted window holds exactly one
/// eigenvalue, and every trusted eigenvalue is real.  Throws config_error when
/// the report says the reality hypothesis fails.
CheckRecord check_small_c_confinement(const galerkin::EigenSolution& sol,
                                      const enclosure::EnclosureReport& report,
                                      const Tolerances& tol);

/// Eigenvector coefficient checks, in order:
///   [0] "dominance":        disk eigenpairs have |psi_k| > 2/3 - slack;
///   [1] "tail_mass":        strip eigenpairs have sum_{|p|>N} |psi_p|^2 < 1/10 + slack;
///   [2] "strip_max_coeff":  strip eigenpairs have max_{|p|<=N} |psi_p|
///                           > 3/sqrt(10(2N+1)) - slack.
std::vector<CheckRecord> check_coefficient_inequalities(
    const galerkin::EigenSolution& sol, const enclosure::EnclosureReport& report,
    const Tolerances& tol);

/// For every trusted eigenpair and interior row k, the coupling sum
/// S_k = sum_v sum_p (2*pi*p + pi*t)^(n-v) psi_p c_v(k-p) obeys
/// |S_k| <= |2*pi*k + pi*t|^(n-2) C (k != 0) resp. pi^(n-2) C (k = 0).
CheckRecord check_row_sum_bounds(const galerkin::EigenSolution& sol,
                                 const ProblemSpec& spec,
                                 const enclosure::EnclosureReport& report,
                                 const Tolerances& tol);

/// Row identity of the eigen-equation: (lambda - (2*pi*k + pi*t)^n) psi_k
/// equals eps * S_k on interior rows, to residual_tol*(1+|lambda|).
CheckRecord check_row_residual(const galerkin::EigenSolution& sol,
                               const ProblemSpec& spec, const Tolerances& tol);

/// The trusted eigenvalue multiset is closed under conjugation.
CheckRecord check_conjugate_pairing(const galerkin::EigenSolution& sol,
                                    const Tolerances& tol);

/// Seeded random sampling of the Leibniz norm bound (lhs <= rhs).
CheckRecord check_leibniz_bound(int n, std::uint64_t seed, int samples);

struct HomotopyTrace {
  double t = 0.0;
  int K = 0;
  std::vector<double> eps_grid;
  std::vector<int> labels;  // start label of each trajectory (eps = 0)
  // trajectories[j][i]: eigenvalue of trajectory j at eps_grid[i]
  std::vector<std::vector<std::complex<double>>> trajectories;
  std::vector<std::string> ambiguities;  // near-ambiguous matches, flagged not failed
  CheckRecord containment;
  CheckRecord count_preservation;

  bool pass() const { return containment.pass && count_preservation.pass; }
};

/// Tracks all eigenvalues along eps_grid (must start at 0, end at 1, spacing
/// <= 0.1) by minimal-total-distance matching between consecutive grid points.
/// Trusted trajectories must stay inside their disk (|k| >= strip_index) or
/// the central rectangle; per-disk counts must agree at eps = 0 and eps = 1.
HomotopyTrace homotopy_trace(const ProblemSpec& spec, double t, int K,
                             const std::vector<double>& eps_grid,
                             const Tolerances& tol, int workers = 1);

struct VerificationReport {
  std::vector<CheckRecord> records;

  /// name -> AND of pass over all records with that name (vacuous when not
  /// applicable).
  std::map<std::string, bool> summary() const;
  bool all_pass() const;
};

/// The full battery at eps = 1 for each t: disk localization, strip Im bound,
/// disk count/reality, small-C confinement (when the hypothesis holds),
/// coefficient inequalities, coupling-sum bounds, row residuals, conjugate
/// pairing, region disjointness, plus one seeded Leibniz-bound sample record.
VerificationReport run_verification(const ProblemSpec& spec,
                                    const std::vector<double>& t_values, int K,
                                    const Tolerances& tol, std::uint64_t seed,
                                    int workers = 1);

}  // namespace ptbloch::verify
