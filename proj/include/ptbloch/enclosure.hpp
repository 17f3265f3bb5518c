#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptbloch/problem.hpp"
#include "ptbloch/regions.hpp"

namespace ptbloch::enclosure {

/// Double-precision budget for the region formulas: centers (2*pi*k + pi*t)^n
/// stay below ~1e18 for n <= 9, |k| <= 200.  Indices beyond |k| = 10^4 or
/// orders beyond 9 are rejected with precision_error.
constexpr int max_order = 9;
constexpr int max_index = 10000;
void precision_guard(int n, int k);

/// The aggregate coefficient-norm constant:
///   C = sum_{v=2..n} sum_{s=0..n-v} (n-v)! * ||p_v^(s)|| / (s! (n-v-s)! pi^(v+s-2)).
double perturbation_constant(const ProblemSpec& spec);

/// Smallest integer N >= C/pi^2 + 1.  Values within 1e-12 of an integer are
/// rounded to it, so exact thresholds (e.g. C = pi^2) do not tip over.
int strip_index(double C);

/// delta_k(t) = (3/2) * pi^(n-2) * C * |2k + t|^(n-2).
double disk_radius(int k, double t, double C, int n);

/// Disk around the free eigenvalue: center (2*pi*k + pi*t)^n, radius delta_k(t).
Disk localization_disk(int k, double t, double C, int n);

/// Re-axis cell [(2*pi*k + pi*t - pi)^n, (2*pi*k + pi*t + pi)^n).
HalfOpenInterval cell_interval(int k, double t, int n);

/// Re-range of the central strip: [(-2*pi*N + pi + pi*t)^n, (2*pi*N - pi + pi*t)^n).
HalfOpenInterval strip_re_range(int N, double t, int n);

/// Central strip with its Im bound (sqrt(10)/3) * (2N+1)^(n-3/2) * pi^(n-2) * C.
Rectangle strip_rectangle(int N, double t, double C, int n);

/// t-independent rectangle confining the nonreal spectrum:
/// |Re| <= (2*pi*N)^n, |Im| < the strip_rectangle Im bound.
CenteredRectangle nonreal_rectangle(const ProblemSpec& spec);
CenteredRectangle nonreal_rectangle(double C, int N, int n);

/// pi^2 * 2^(-n + 1/2); all Bloch eigenvalues are real when C stays at or
/// below it.
double reality_threshold(int n);
bool reality_holds(double C, int n);

/// The small-C disks for k in {-1, 0, 1}:
///   center (pi*t)^n,          radius (1/5) * pi^n        for k = 0,
///   center (2*pi + pi*t)^n,   radius (3/10)|2+t|^(n-2) pi^n  for k = 1,
///   center (pi*t - 2*pi)^n,   radius (3/10)|t-2|^(n-2) pi^n  for k = -1.
/// Throws config_error when the reality hypothesis C <= reality_threshold fails.
std::vector<std::pair<int, Disk>> central_disks(double t, double C, int n);

struct EnclosureReport {
  int n = 3;
  double t = 0.0;
  double C = 0.0;
  int N = 1;
  double reality_threshold = 0.0;
  bool reality_holds = false;
  int window = 0;  // disks reported for |k| <= window
  std::vector<std::pair<int, Disk>> disks;
  HalfOpenInterval strip;           // Re-range of the central strip
  Rectangle rectangle;              // central strip with Im bound
  CenteredRectangle nonreal_rect;   // confinement of the nonreal spectrum
  // Present when reality_holds: the small-C disks for |k| <= 1 plus the
  // standard disks for 1 < |k| <= window.
  std::optional<std::vector<std::pair<int, Disk>>> small_c_disks;
};

/// Default reporting window max(3N+5, 10).
int default_window(int N);

EnclosureReport make_report(const ProblemSpec& spec, double t,
                            std::optional<int> window = std::nullopt);

struct DisjointnessResult {
  bool pass = true;
  std::vector<std::string> witnesses;
};

/// Geometric certificate: (i) the reported disks are pairwise disjoint
/// (center separation exceeds the radius sum), and (ii) every reported disk
/// with |k| >= N lies strictly outside the closure of the central rectangle.
/// Uses the small-C disk list when present, else the standard disks.
DisjointnessResult disjointness_certificate(const EnclosureReport& report);

struct NormBoundPair {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Exact Parseval norm of the modulated coefficient derivative versus its
/// Leibniz-sum bound with theta = 2*pi*k + pi*t:
///   lhs = sqrt(sum_m |c_v(m)|^2 (2*pi*m + theta)^(2(n-v)))
///   rhs = sum_s (n-v)! |theta|^(n-v-s) ||p_v^(s)|| / (s!(n-v-s)!).
/// Always lhs <= rhs.
NormBoundPair leibniz_norm_bound(int v, double theta, const ProblemSpec& spec);

}  // namespace ptbloch::enclosure
