#pragma once

#include <complex>
#include <string>
#include <vector>

#include "ptbloch/enclosure.hpp"
#include "ptbloch/galerkin.hpp"
#include "ptbloch/verify.hpp"

namespace ptbloch::bands {

/// Quasimomentum grid -1 + 2j/count for j = 1..count: evenly spaced points of
/// (-1, 1] ending exactly at t = 1.
std::vector<double> make_t_grid(int count);

/// [0, 1] with count evenly spaced points (count >= 2).
std::vector<double> make_eps_grid(int count);

struct Band {
  int k_label = 0;  // label at the first grid point
  std::vector<std::complex<double>> values;  // one eigenvalue per grid point
};

/// A maximal run of grid points on one band with constant classification.
struct Arc {
  int band = 0;
  int begin = 0;  // grid range [begin, end)
  int end = 0;
  bool real = true;
};

struct BandStructure {
  int n = 3;
  int K = 0;
  double eps = 1.0;
  int trusted_window = 1;
  double reality_tol = 1e-7;
  std::vector<double> t_grid;
  std::vector<Band> bands;
  std::vector<std::pair<int, int>> degeneracies;  // (band index, grid index)
  std::vector<std::string> stitch_warnings;

  bool point_is_real(std::complex<double> lambda) const {
    return std::abs(lambda.imag()) <= reality_tol * (1.0 + std::abs(lambda));
  }
  bool trusted(const Band& band) const {
    return std::abs(band.k_label) <= trusted_window;
  }
  std::vector<Arc> arcs() const;
  /// Closed Re-interval swept by a band.
  HalfOpenInterval coverage(const Band& band) const;
};

/// Eigen-solves every grid point (spacing <= 0.05) and stitches bands by
/// minimal-total-distance continuation, seeded by the labels at the first
/// point.  Bands are ordered by (k_label, Re, Im) at the first point.
/// Collisions between stitched bands are flagged as degeneracies rather than
/// reordered.
BandStructure sweep(const ProblemSpec& spec, const std::vector<double>& t_grid,
                    int K, double eps, const verify::Tolerances& tol,
                    int workers = 1);

/// Desk-scale corroboration that the real spectrum has no gaps: the coverage
/// intervals of fully-real trusted bands plus the Re-range of the nonreal
/// rectangle must cover [min, max] of the trusted band values.  Allowed gap
/// between neighbours: coverage_gap_tol * (lower interval width) plus a grid
/// resolution term of 1.5x the larger adjacent per-step increment (adjacent
/// band ends one grid step short of where the next band starts).
verify::CheckRecord real_coverage_check(const BandStructure& bs,
                                        const enclosure::EnclosureReport& report,
                                        const verify::Tolerances& tol);

/// Every nonreal point on a trusted band lies in the nonreal rectangle.
verify::CheckRecord nonreal_arcs_in_rectangle(const BandStructure& bs,
                                              const enclosure::EnclosureReport& report,
                                              const verify::Tolerances& tol);

/// Every nonreal arc has a partner arc carrying its pointwise conjugates.
verify::CheckRecord conjugate_arc_pairing(const BandStructure& bs,
                                          const verify::Tolerances& tol);

}  // namespace ptbloch::bands
