#include "ptbloch/enclosure.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ptbloch/errors.hpp"

namespace ptbloch::enclosure {

namespace {

constexpr double pi = std::numbers::pi;

double factorial(int k) {
  double f = 1.0;
  for (int j = 2; j <= k; ++j) f *= j;
  return f;
}

double int_pow(double base, int e) {
  double r = 1.0;
  for (int j = 0; j < e; ++j) r *= base;
  return r;
}

void check_t(double t) {
  if (!(t > -1.0 && t <= 1.0)) {
    std::ostringstream os;
    os << "quasimomentum t must lie in (-1, 1], got t=" << t;
    throw config_error(os.str());
  }
}

}  // namespace

void precision_guard(int n, int k) {
  if (n > max_order) {
    throw precision_error("order n=" + std::to_string(n) +
                          " exceeds the double-precision budget (max " +
                          std::to_string(max_order) + ")");
  }
  if (std::abs(k) > max_index) {
    throw precision_error("index k=" + std::to_string(k) +
                          " exceeds the double-precision budget (max |k|=" +
                          std::to_string(max_index) + ")");
  }
}

double perturbation_constant(const ProblemSpec& spec) {
  const int n = spec.order();
  precision_guard(n, 0);
  double C = 0.0;
  for (int v = 2; v <= n; ++v) {
    const FourierPoly& p = spec.coefficient(v);
    if (p.is_zero()) continue;
    for (int s = 0; s <= n - v; ++s) {
      const double norm = p.derivative(static_cast<unsigned>(s)).l2_norm();
      C += factorial(n - v) * norm /
           (factorial(s) * factorial(n - v - s) * int_pow(pi, v + s - 2));
    }
  }
  return C;
}

int strip_index(double C) {
  if (C < 0.0) throw config_error("perturbation constant C must be nonnegative");
  const double threshold = C / (pi * pi) + 1.0;
  const double fl = std::floor(threshold);
  // "smallest integer >=" includes equality; absorb round-off at integers.
  const int N = (threshold - fl <= 1e-12) ? static_cast<int>(fl)
                                          : static_cast<int>(std::ceil(threshold));
  return std::max(N, 1);
}

double disk_radius(int k, double t, double C, int n) {
  precision_guard(n, k);
  check_t(t);
  if (C == 0.0) return 0.0;
  return 1.5 * int_pow(pi, n - 2) * C * int_pow(std::abs(2.0 * k + t), n - 2);
}

Disk localization_disk(int k, double t, double C, int n) {
  precision_guard(n, k);
  check_t(t);
  const double center = int_pow(2.0 * pi * k + pi * t, n);
  return Disk{{center, 0.0}, disk_radius(k, t, C, n)};
}

HalfOpenInterval cell_interval(int k, double t, int n) {
  precision_guard(n, k);
  check_t(t);
  const double theta = 2.0 * pi * k + pi * t;
  return HalfOpenInterval{int_pow(theta - pi, n), int_pow(theta + pi, n)};
}

HalfOpenInterval strip_re_range(int N, double t, int n) {
  if (N < 1) throw config_error("strip index N must be >= 1");
  precision_guard(n, N);
  check_t(t);
  return HalfOpenInterval{int_pow(-2.0 * pi * N + pi + pi * t, n),
                          int_pow(2.0 * pi * N - pi + pi * t, n)};
}

Rectangle strip_rectangle(int N, double t, double C, int n) {
  const double im_bound = (std::sqrt(10.0) / 3.0) *
                          std::pow(2.0 * N + 1.0, n - 1.5) * int_pow(pi, n - 2) * C;
  return Rectangle{strip_re_range(N, t, n), im_bound};
}

CenteredRectangle nonreal_rectangle(double C, int N, int n) {
  if (N < 1) throw config_error("strip index N must be >= 1");
  precision_guard(n, N);
  const double im_bound = (std::sqrt(10.0) / 3.0) *
                          std::pow(2.0 * N + 1.0, n - 1.5) * int_pow(pi, n - 2) * C;
  return CenteredRectangle{int_pow(2.0 * pi * N, n), im_bound};
}

CenteredRectangle nonreal_rectangle(const ProblemSpec& spec) {
  const double C = perturbation_constant(spec);
  return nonreal_rectangle(C, strip_index(C), spec.order());
}

double reality_threshold(int n) {
  if (n <= 1 || n % 2 == 0) throw config_error("order n must be odd and > 1");
  return pi * pi * std::pow(2.0, -n + 0.5);
}

bool reality_holds(double C, int n) { return C <= reality_threshold(n); }

std::vector<std::pair<int, Disk>> central_disks(double t, double C, int n) {
  precision_guard(n, 1);
  check_t(t);
  if (!reality_holds(C, n)) {
    throw config_error("central disks require C <= the reality threshold");
  }
  const double pin = int_pow(pi, n);
  std::vector<std::pair<int, Disk>> disks;
  disks.emplace_back(-1, Disk{{int_pow(pi * t - 2.0 * pi, n), 0.0},
                              0.3 * int_pow(std::abs(t - 2.0), n - 2) * pin});
  disks.emplace_back(0, Disk{{int_pow(pi * t, n), 0.0}, 0.2 * pin});
  disks.emplace_back(1, Disk{{int_pow(2.0 * pi + pi * t, n), 0.0},
                             0.3 * int_pow(std::abs(2.0 + t), n - 2) * pin});
  return disks;
}

int default_window(int N) { return std::max(3 * N + 5, 10); }

EnclosureReport make_report(const ProblemSpec& spec, double t,
                            std::optional<int> window) {
  EnclosureReport report;
  report.n = spec.order();
  report.t = t;
  report.C = perturbation_constant(spec);
  report.N = strip_index(report.C);
  report.reality_threshold = reality_threshold(spec.order());
  report.reality_holds = reality_holds(report.C, spec.order());
  report.window = window.value_or(default_window(report.N));
  precision_guard(spec.order(), report.window);
  for (int k = -report.window; k <= report.window; ++k) {
    report.disks.emplace_back(k, localization_disk(k, t, report.C, report.n));
  }
  report.strip = strip_re_range(report.N, t, report.n);
  report.rectangle = strip_rectangle(report.N, t, report.C, report.n);
  report.nonreal_rect = nonreal_rectangle(report.C, report.N, report.n);
  if (report.reality_holds) {
    auto disks = central_disks(t, report.C, report.n);
    for (int k = 2; k <= report.window; ++k) {
      disks.emplace_back(-k, localization_disk(-k, t, report.C, report.n));
      disks.emplace_back(k, localization_disk(k, t, report.C, report.n));
    }
    std::sort(disks.begin(), disks.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    report.small_c_disks = std::move(disks);
  }
  return report;
}

DisjointnessResult disjointness_certificate(const EnclosureReport& report) {
  const auto& disks = report.small_c_disks ? *report.small_c_disks : report.disks;
  DisjointnessResult result;
  for (std::size_t a = 0; a < disks.size(); ++a) {
    for (std::size_t b = a + 1; b < disks.size(); ++b) {
      const double separation = std::abs(disks[a].second.center - disks[b].second.center);
      if (separation <= disks[a].second.radius + disks[b].second.radius) {
        std::ostringstream os;
        os << "disks k=" << disks[a].first << " and k=" << disks[b].first
           << " overlap: separation " << separation << " <= radius sum "
           << disks[a].second.radius + disks[b].second.radius;
        result.pass = false;
        result.witnesses.push_back(os.str());
      }
    }
  }
  for (const auto& [k, disk] : disks) {
    if (std::abs(k) < report.N) continue;
    const double distance = report.strip.distance(disk.center.real());
    if (distance <= disk.radius) {
      std::ostringstream os;
      os << "disk k=" << k << " touches the central rectangle: Re-distance "
         << distance << " <= radius " << disk.radius;
      result.pass = false;
      result.witnesses.push_back(os.str());
    }
  }
  return result;
}

NormBoundPair leibniz_norm_bound(int v, double theta, const ProblemSpec& spec) {
  const int n = spec.order();
  if (v < 2 || v > n) throw config_error("coefficient index v outside 2..n");
  const FourierPoly& p = spec.coefficient(v);
  const int d = n - v;
  NormBoundPair out;
  double lhs_sq = 0.0;
  for (const auto& [m, c] : p.coeffs()) {
    lhs_sq += std::norm(c) * int_pow((2.0 * pi * m + theta) * (2.0 * pi * m + theta), d);
  }
  out.lhs = std::sqrt(lhs_sq);
  for (int s = 0; s <= d; ++s) {
    out.rhs += factorial(d) * std::pow(std::abs(theta), d - s) *
               p.derivative(static_cast<unsigned>(s)).l2_norm() /
               (factorial(s) * factorial(d - s));
  }
  return out;
}

}  // namespace ptbloch::enclosure
