#include "ptbloch/bands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ptbloch/assignment.hpp"
#include "ptbloch/errors.hpp"
#include "ptbloch/parallel.hpp"

namespace ptbloch::bands {

std::vector<double> make_t_grid(int count) {
  if (count < 1) throw config_error("t grid needs at least one point");
  std::vector<double> grid;
  grid.reserve(count);
  for (int j = 1; j <= count; ++j) grid.push_back(-1.0 + 2.0 * j / count);
  grid.back() = 1.0;
  return grid;
}

std::vector<double> make_eps_grid(int count) {
  if (count < 2) throw config_error("eps grid needs at least two points");
  std::vector<double> grid;
  grid.reserve(count);
  for (int j = 0; j < count; ++j) grid.push_back(static_cast<double>(j) / (count - 1));
  grid.front() = 0.0;
  grid.back() = 1.0;
  return grid;
}

std::vector<Arc> BandStructure::arcs() const {
  std::vector<Arc> out;
  for (std::size_t b = 0; b < bands.size(); ++b) {
    const auto& values = bands[b].values;
    std::size_t begin = 0;
    while (begin < values.size()) {
      const bool real = point_is_real(values[begin]);
      std::size_t end = begin + 1;
      while (end < values.size() && point_is_real(values[end]) == real) ++end;
      out.push_back({static_cast<int>(b), static_cast<int>(begin),
                     static_cast<int>(end), real});
      begin = end;
    }
  }
  return out;
}

HalfOpenInterval BandStructure::coverage(const Band& band) const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& value : band.values) {
    lo = std::min(lo, value.real());
    hi = std::max(hi, value.real());
  }
  return {lo, hi};
}

BandStructure sweep(const ProblemSpec& spec, const std::vector<double>& t_grid,
                    int K, double eps, const verify::Tolerances& tol, int workers) {
  if (t_grid.empty()) throw config_error("band sweep needs a nonempty t grid");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > -1.0 && t_grid[i] <= 1.0)) {
      throw config_error("band sweep grid points must lie in (-1, 1]");
    }
    if (i > 0) {
      const double step = t_grid[i] - t_grid[i - 1];
      if (step <= 0.0 || step > 0.05 + 1e-12) {
        throw config_error("band sweep grid must be increasing with spacing <= 0.05");
      }
    }
  }

  std::vector<galerkin::EigenSolution> sols(t_grid.size());
  parallel_for(t_grid.size(), workers, [&](std::size_t i) {
    try {
      sols[i] = galerkin::eigensystem(galerkin::assemble(spec, t_grid[i], eps, K));
    } catch (const numeric_error& err) {
      std::ostringstream os;
      os << "eigensolve failed at t=" << t_grid[i] << ": " << err.what();
      throw numeric_error(os.str());
    }
  });

  const int dim = 2 * K + 1;
  BandStructure bs;
  bs.n = spec.order();
  bs.K = K;
  bs.eps = eps;
  bs.trusted_window = sols[0].trusted_window;
  bs.reality_tol = tol.reality_tol;
  bs.t_grid = t_grid;

  // Seed bands at the first grid point, ordered for reproducible output.
  std::vector<int> order(dim);
  for (int j = 0; j < dim; ++j) order[j] = j;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& pa = sols[0].pairs[a];
    const auto& pb = sols[0].pairs[b];
    if (pa.k_label != pb.k_label) return pa.k_label < pb.k_label;
    if (pa.lambda.real() != pb.lambda.real()) return pa.lambda.real() < pb.lambda.real();
    return pa.lambda.imag() < pb.lambda.imag();
  });
  bs.bands.resize(dim);
  std::vector<int> cursor(dim);
  for (int j = 0; j < dim; ++j) {
    cursor[j] = order[j];
    bs.bands[j].k_label = sols[0].pairs[order[j]].k_label;
    bs.bands[j].values.reserve(t_grid.size());
    bs.bands[j].values.push_back(sols[0].pairs[order[j]].lambda);
  }

  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
    Eigen::MatrixXd cost(dim, dim);
    for (int a = 0; a < dim; ++a) {
      for (int b = 0; b < dim; ++b) {
        cost(a, b) = std::abs(sols[i].pairs[a].lambda - sols[i + 1].pairs[b].lambda);
      }
    }
    const std::vector<int> assignment = min_cost_assignment(cost);
    bool ambiguous = false;
    for (int j = 0; j < dim; ++j) {
      const int a = cursor[j];
      const int b = assignment[a];
      double second = std::numeric_limits<double>::infinity();
      for (int other = 0; other < dim; ++other) {
        if (other != b) second = std::min(second, cost(a, other));
      }
      if (second - cost(a, b) <
          tol.ambiguity_tol * (1.0 + std::abs(sols[i].pairs[a].lambda))) {
        ambiguous = true;
      }
      cursor[j] = b;
      bs.bands[j].values.push_back(sols[i + 1].pairs[b].lambda);
    }
    if (ambiguous) {
      std::ostringstream os;
      os << "ambiguous continuation between t=" << t_grid[i] << " and t="
         << t_grid[i + 1];
      bs.stitch_warnings.push_back(os.str());
    }
  }

  // Collisions between distinct bands are flagged, never swapped.
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    for (int a = 0; a < dim; ++a) {
      for (int b = a + 1; b < dim; ++b) {
        const std::complex<double> za = bs.bands[a].values[i];
        const std::complex<double> zb = bs.bands[b].values[i];
        if (std::abs(za - zb) < tol.degeneracy_tol * (1.0 + std::abs(za))) {
          bs.degeneracies.emplace_back(a, static_cast<int>(i));
          bs.degeneracies.emplace_back(b, static_cast<int>(i));
        }
      }
    }
  }
  return bs;
}

namespace {

struct CoverageInterval {
  double lo = 0.0;
  double hi = 0.0;
  double max_step = 0.0;  // largest per-grid-step Re increment of the band
  std::string origin;
};

}  // namespace

verify::CheckRecord real_coverage_check(const BandStructure& bs,
                                        const enclosure::EnclosureReport& report,
                                        const verify::Tolerances& tol) {
  verify::CheckRecord record("real_coverage", bs.t_grid.back(), bs.eps, bs.K);

  double probe_lo = std::numeric_limits<double>::infinity();
  double probe_hi = -probe_lo;
  std::vector<CoverageInterval> intervals;
  for (std::size_t b = 0; b < bs.bands.size(); ++b) {
    const Band& band = bs.bands[b];
    if (!bs.trusted(band)) continue;
    const auto span = bs.coverage(band);
    probe_lo = std::min(probe_lo, span.lo);
    probe_hi = std::max(probe_hi, span.hi);
    const bool all_real = std::all_of(band.values.begin(), band.values.end(),
                                      [&](auto z) { return bs.point_is_real(z); });
    if (!all_real) continue;
    CoverageInterval interval{span.lo, span.hi, 0.0,
                              "band " + std::to_string(band.k_label)};
    for (std::size_t i = 1; i < band.values.size(); ++i) {
      interval.max_step = std::max(
          interval.max_step, std::abs(band.values[i].real() - band.values[i - 1].real()));
    }
    intervals.push_back(std::move(interval));
  }
  intervals.push_back({-report.nonreal_rect.re_bound, report.nonreal_rect.re_bound,
                       0.0, "rectangle"});
  std::sort(intervals.begin(), intervals.end(),
            [](const auto& a, const auto& b) { return a.lo < b.lo; });

  record.checked = static_cast<int>(intervals.size());
  double covered_to = probe_lo;
  double last_width = 0.0;
  double last_step = 0.0;
  for (const auto& interval : intervals) {
    if (interval.hi < probe_lo || interval.lo > probe_hi) continue;
    const double gap = interval.lo - covered_to;
    const double allowance = tol.coverage_gap_tol * std::max(last_width, 1.0) +
                             1.5 * std::max(last_step, interval.max_step);
    if (gap > allowance) {
      std::ostringstream os;
      os << "coverage gap [" << covered_to << ", " << interval.lo << "] of size "
         << gap << " before " << interval.origin << " (allowed " << allowance << ")";
      record.fail({covered_to, 0.0}, os.str());
    }
    if (interval.hi > covered_to) {
      covered_to = interval.hi;
      last_width = interval.hi - interval.lo;
      last_step = interval.max_step;
    }
  }
  if (covered_to < probe_hi) {
    std::ostringstream os;
    os << "real coverage stops at " << covered_to << " short of probe end " << probe_hi;
    record.fail({covered_to, 0.0}, os.str());
  }
  record.stats["probe_lo"] = probe_lo;
  record.stats["probe_hi"] = probe_hi;
  return record;
}

verify::CheckRecord nonreal_arcs_in_rectangle(const BandStructure& bs,
                                              const enclosure::EnclosureReport& report,
                                              const verify::Tolerances& tol) {
  verify::CheckRecord record("nonreal_in_rectangle", bs.t_grid.back(), bs.eps, bs.K);
  int nonreal_points = 0;
  for (const auto& band : bs.bands) {
    if (!bs.trusted(band)) continue;
    for (std::size_t i = 0; i < band.values.size(); ++i) {
      const std::complex<double> lambda = band.values[i];
      if (bs.point_is_real(lambda)) continue;
      ++nonreal_points;
      ++record.checked;
      const double slack = tol.slack * (1.0 + std::abs(lambda));
      if (!report.nonreal_rect.contains(lambda, slack)) {
        std::ostringstream os;
        os << "nonreal point on band " << band.k_label << " at t=" << bs.t_grid[i]
           << " escapes the rectangle";
        record.fail(lambda, os.str());
      }
    }
  }
  record.stats["nonreal_points"] = nonreal_points;
  return record;
}

verify::CheckRecord conjugate_arc_pairing(const BandStructure& bs,
                                          const verify::Tolerances& tol) {
  verify::CheckRecord record("conjugate_arcs", bs.t_grid.back(), bs.eps, bs.K);
  const auto arcs = bs.arcs();
  for (const auto& arc : arcs) {
    if (arc.real) continue;
    if (!bs.trusted(bs.bands[arc.band])) continue;
    ++record.checked;
    bool paired = false;
    for (const auto& other : arcs) {
      if (other.real || other.band == arc.band) continue;
      if (other.begin > arc.begin || other.end < arc.end) continue;
      bool matches = true;
      for (int i = arc.begin; i < arc.end && matches; ++i) {
        const std::complex<double> want = std::conj(bs.bands[arc.band].values[i]);
        const std::complex<double> have = bs.bands[other.band].values[i];
        matches = std::abs(want - have) <= tol.pairing_tol * (1.0 + std::abs(want));
      }
      if (matches) {
        paired = true;
        break;
      }
    }
    if (!paired) {
      std::ostringstream os;
      os << "nonreal arc on band " << bs.bands[arc.band].k_label << " over t=["
         << bs.t_grid[arc.begin] << ", " << bs.t_grid[arc.end - 1]
         << "] has no conjugate partner";
      record.fail(bs.bands[arc.band].values[arc.begin], os.str());
    }
  }
  return record;
}

}  // namespace ptbloch::bands
