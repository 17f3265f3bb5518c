#include <doctest.h>

#include <cmath>
#include <random>

#include "ptbloch/bands.hpp"
#include "ptbloch/enclosure.hpp"
#include "ptbloch/errors.hpp"
#include "support.hpp"

using namespace ptbloch;
using support::cos_spec;
using support::free_spec;
using support::pi;

TEST_SUITE_BEGIN("enclosure");

TEST_CASE("perturbation constant") {
  CHECK(enclosure::perturbation_constant(free_spec()) == 0.0);

  // Hand-expanded double sum for n=3, p_2 = 2cos(2*pi*x):
  // ||p_2|| + ||p_2'||/pi + ||p_3||/pi, with norms from the quadrature oracle.
  const auto spec = cos_spec(1.0);
  const FourierPoly& p2 = spec.coefficient(2);
  const double expected = support::quadrature_l2_norm(p2) +
                          support::quadrature_l2_norm(p2.derivative(1)) / pi;
  const double C = enclosure::perturbation_constant(spec);
  CHECK(C == doctest::Approx(expected).epsilon(1e-12));
  CHECK(C == doctest::Approx(3.0 * std::sqrt(2.0)).epsilon(1e-13));

  CHECK(enclosure::perturbation_constant(cos_spec(0.25)) ==
        doctest::Approx(0.75 * std::sqrt(2.0)).epsilon(1e-13));
}

TEST_CASE("perturbation constant is homogeneous in the coefficients") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto spec = support::random_spec(rng, 5, 4);
    const double base = enclosure::perturbation_constant(spec);
    for (const double alpha : {0.5, 2.0, 7.25}) {
      const double scaled = enclosure::perturbation_constant(spec.scaled(alpha));
      CHECK(std::abs(scaled - alpha * base) <= 1e-12 * (1.0 + alpha * base));
    }
  }
}

TEST_CASE("strip index") {
  CHECK(enclosure::strip_index(0.0) == 1);
  CHECK(enclosure::strip_index(3.0 * std::sqrt(2.0)) == 2);  // threshold ~1.4299
  CHECK(enclosure::strip_index(pi * pi) == 2);               // exact boundary
  CHECK(enclosure::strip_index(pi * pi * (1.0 + 1e-15)) == 2);  // round-off guard

  // Nondecreasing in C.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pick(0.0, 500.0);
  for (int trial = 0; trial < 200; ++trial) {
    double a = pick(rng), b = pick(rng);
    if (a > b) std::swap(a, b);
    CHECK(enclosure::strip_index(a) <= enclosure::strip_index(b));
  }
}

TEST_CASE("disk radius") {
  CHECK(enclosure::disk_radius(3, 0.2, 0.0, 3) == 0.0);
  const double C = 3.0 * std::sqrt(2.0);
  CHECK(enclosure::disk_radius(2, 0.0, C, 3) ==
        doctest::Approx(18.0 * std::sqrt(2.0) * pi).epsilon(1e-13));
  CHECK(enclosure::disk_radius(-2, 0.0, C, 3) ==
        enclosure::disk_radius(2, 0.0, C, 3));

  // Nondecreasing in |2k+t|.
  for (int k = 0; k < 20; ++k) {
    CHECK(enclosure::disk_radius(k, 0.3, C, 3) <= enclosure::disk_radius(k + 1, 0.3, C, 3));
  }
}

TEST_CASE("localization disk") {
  const Disk free1 = enclosure::localization_disk(1, 0.0, 0.0, 3);
  CHECK(free1.center.real() == doctest::Approx(std::pow(2.0 * pi, 3)).epsilon(1e-14));
  CHECK(free1.radius == 0.0);

  const double C = 3.0 * std::sqrt(2.0);
  const Disk d2 = enclosure::localization_disk(2, 0.0, C, 3);
  CHECK(d2.center.real() == doctest::Approx(std::pow(4.0 * pi, 3)).epsilon(1e-14));
  CHECK(d2.radius == doctest::Approx(79.97).epsilon(1e-3));

  const Disk d0 = enclosure::localization_disk(0, 1.0, 0.0, 3);
  CHECK(d0.center.real() == doctest::Approx(std::pow(pi, 3)).epsilon(1e-14));
}

TEST_CASE("cell intervals tile the axis") {
  const auto cell0 = enclosure::cell_interval(0, 0.0, 3);
  CHECK(cell0.lo == doctest::Approx(-std::pow(pi, 3)).epsilon(1e-14));
  CHECK(cell0.hi == doctest::Approx(std::pow(pi, 3)).epsilon(1e-14));

  const auto cell1 = enclosure::cell_interval(1, 0.0, 3);
  CHECK(cell1.lo == doctest::Approx(std::pow(pi, 3)).epsilon(1e-14));
  CHECK(cell1.hi == doctest::Approx(std::pow(3.0 * pi, 3)).epsilon(1e-14));

  // Shared endpoints are computed from the same expression: exact equality.
  for (const double t : bands::make_t_grid(7)) {
    for (int k = -10; k < 10; ++k) {
      CHECK(enclosure::cell_interval(k, t, 3).hi == enclosure::cell_interval(k + 1, t, 3).lo);
    }
  }
}

TEST_CASE("strip range and tiling identity") {
  const auto s1 = enclosure::strip_re_range(1, 0.0, 3);
  CHECK(s1.lo == doctest::Approx(-std::pow(pi, 3)).epsilon(1e-14));
  CHECK(s1.hi == doctest::Approx(std::pow(pi, 3)).epsilon(1e-14));

  const auto s2 = enclosure::strip_re_range(2, 0.0, 3);
  CHECK(s2.lo == doctest::Approx(-std::pow(3.0 * pi, 3)).epsilon(1e-14));
  CHECK(s2.hi == doctest::Approx(std::pow(3.0 * pi, 3)).epsilon(1e-14));

  // strip(N, t) is exactly the union of the cells |k| <= N-1.
  for (const double t : bands::make_t_grid(7)) {
    for (int N = 1; N <= 5; ++N) {
      const auto strip = enclosure::strip_re_range(N, t, 3);
      CHECK(strip.lo == enclosure::cell_interval(-(N - 1), t, 3).lo);
      CHECK(strip.hi == enclosure::cell_interval(N - 1, t, 3).hi);
    }
  }
}

TEST_CASE("strip rectangle") {
  CHECK(enclosure::strip_rectangle(2, 0.0, 0.0, 3).im_bound == 0.0);
  const double C = 3.0 * std::sqrt(2.0);
  const double expected = (std::sqrt(10.0) / 3.0) * std::pow(5.0, 1.5) * pi * C;
  CHECK(enclosure::strip_rectangle(2, 0.0, C, 3).im_bound ==
        doctest::Approx(expected).epsilon(1e-14));
  CHECK(expected == doctest::Approx(157.08).epsilon(1e-3));
  CHECK(enclosure::strip_rectangle(1, 0.0, 1.0, 3).im_bound ==
        doctest::Approx((std::sqrt(10.0) / 3.0) * std::pow(3.0, 1.5) * pi).epsilon(1e-14));
}

TEST_CASE("nonreal rectangle") {
  const auto free_rect = enclosure::nonreal_rectangle(free_spec());
  CHECK(free_rect.re_bound == doctest::Approx(std::pow(2.0 * pi, 3)).epsilon(1e-14));
  CHECK(free_rect.im_bound == 0.0);

  const auto rect = enclosure::nonreal_rectangle(cos_spec(1.0));
  CHECK(rect.re_bound == doctest::Approx(std::pow(4.0 * pi, 3)).epsilon(1e-14));
  CHECK(rect.im_bound == doctest::Approx(157.08).epsilon(1e-3));

  // Halving the amplitude keeps N=2 and halves the Im bound.
  const double C_half = enclosure::perturbation_constant(cos_spec(0.5));
  REQUIRE(enclosure::strip_index(C_half) == 2);
  const auto rect_half = enclosure::nonreal_rectangle(cos_spec(0.5));
  CHECK(rect_half.im_bound == doctest::Approx(0.5 * rect.im_bound).epsilon(1e-12));
  CHECK(rect_half.re_bound == rect.re_bound);
}

TEST_CASE("reality threshold") {
  CHECK(enclosure::reality_threshold(3) ==
        doctest::Approx(pi * pi * std::pow(2.0, -2.5)).epsilon(1e-15));
  CHECK(enclosure::reality_threshold(3) == doctest::Approx(1.74475).epsilon(1e-5));
  CHECK(enclosure::reality_holds(0.0, 3));
  CHECK(enclosure::reality_holds(1.70, 3));
  CHECK_FALSE(enclosure::reality_holds(3.0 * std::sqrt(2.0), 3));
}

TEST_CASE("small-C central disks") {
  const auto disks = enclosure::central_disks(0.0, 0.5, 3);
  REQUIRE(disks.size() == 3);
  CHECK(disks[0].first == -1);
  CHECK(disks[1].first == 0);
  CHECK(disks[2].first == 1);
  CHECK(disks[1].second.center == std::complex<double>(0.0, 0.0));
  CHECK(disks[1].second.radius == doctest::Approx(std::pow(pi, 3) / 5.0).epsilon(1e-14));
  CHECK(disks[2].second.center.real() == doctest::Approx(std::pow(2.0 * pi, 3)).epsilon(1e-14));
  CHECK(disks[2].second.radius ==
        doctest::Approx(0.3 * 2.0 * std::pow(pi, 3)).epsilon(1e-14));

  const auto at_one = enclosure::central_disks(1.0, 0.5, 3);
  CHECK(at_one[0].second.center.real() == doctest::Approx(-std::pow(pi, 3)).epsilon(1e-14));
  CHECK(at_one[0].second.radius == doctest::Approx(0.3 * std::pow(pi, 3)).epsilon(1e-14));

  CHECK_THROWS_AS(enclosure::central_disks(0.0, 3.0 * std::sqrt(2.0), 3), config_error);
}

TEST_CASE("report invariants") {
  const auto report = enclosure::make_report(cos_spec(1.0), 0.3);
  const double threshold = report.C / (pi * pi) + 1.0;
  CHECK(report.N >= threshold - 1e-12);
  CHECK(report.N - 1 < threshold);
  CHECK(report.window == 11);  // max(3N+5, 10)
  CHECK(report.disks.size() == 23);
  CHECK(report.rectangle.im_bound ==
        doctest::Approx((std::sqrt(10.0) / 3.0) * std::pow(2.0 * report.N + 1.0, 1.5) *
                        pi * report.C)
            .epsilon(1e-14));
  CHECK_FALSE(report.small_c_disks.has_value());

  const auto small = enclosure::make_report(cos_spec(0.25), 0.3);
  CHECK(small.reality_holds);
  REQUIRE(small.small_c_disks.has_value());
  CHECK(small.small_c_disks->size() == 2 * small.window + 1);
}

TEST_CASE("disjointness certificate") {
  CHECK(enclosure::disjointness_certificate(enclosure::make_report(free_spec(), 0.5)).pass);

  for (const double t : bands::make_t_grid(21)) {
    CHECK(enclosure::disjointness_certificate(enclosure::make_report(cos_spec(1.0), t)).pass);
    CHECK(enclosure::disjointness_certificate(enclosure::make_report(cos_spec(0.25), t)).pass);
  }

  // Forced violation: inflate one radius far beyond its neighbours.
  auto report = enclosure::make_report(cos_spec(1.0), 0.0);
  report.disks[report.window + 2].second.radius *= 100.0;
  const auto result = enclosure::disjointness_certificate(report);
  CHECK_FALSE(result.pass);
  REQUIRE_FALSE(result.witnesses.empty());
  CHECK(result.witnesses.front().find("k=") != std::string::npos);
}

TEST_CASE("disjointness over a wide window") {
  // The certified geometry holds across t for the window 3N+5 used in reports.
  for (const double t : bands::make_t_grid(21)) {
    const auto report = enclosure::make_report(cos_spec(1.0), t, 3 * 2 + 5);
    CHECK(enclosure::disjointness_certificate(report).pass);
  }
}

TEST_CASE("leibniz norm bound") {
  const auto zero = enclosure::leibniz_norm_bound(2, 5.0, free_spec());
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);

  const auto spec = cos_spec(1.0);
  const auto bound = enclosure::leibniz_norm_bound(2, 2.0 * pi, spec);
  CHECK(bound.lhs == doctest::Approx(4.0 * pi).epsilon(1e-13));
  CHECK(bound.rhs == doctest::Approx(4.0 * std::sqrt(2.0) * pi).epsilon(1e-13));
  CHECK(bound.lhs <= bound.rhs);

  // Zero derivative order: single-term sum, equality.
  const ProblemSpec with_p3(3, {{3, FourierPoly({{1, 1.0}, {-1, 1.0}})}});
  const auto flat = enclosure::leibniz_norm_bound(3, 2.0 * pi, with_p3);
  CHECK(flat.lhs == doctest::Approx(flat.rhs).epsilon(1e-14));
  CHECK(flat.lhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("leibniz bound holds on random samples") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> pick_k(-10, 10);
  std::uniform_real_distribution<double> pick_t(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = (trial % 3) * 2 + 3;  // 3, 5, 7
    std::uniform_int_distribution<int> pick_v(2, n);
    const int v = pick_v(rng);
    const ProblemSpec spec(n, {{v, support::random_poly(rng, 8)}});
    const double theta = 2.0 * pi * pick_k(rng) + pi * pick_t(rng);
    const auto bound = enclosure::leibniz_norm_bound(v, theta, spec);
    CHECK(bound.lhs <= bound.rhs * (1.0 + 1e-12));
  }
}

TEST_CASE("precision guards") {
  CHECK_THROWS_AS(enclosure::disk_radius(3, 0.0, 1.0, 11), precision_error);
  CHECK_THROWS_AS(enclosure::localization_disk(20001, 0.0, 1.0, 3), precision_error);
  CHECK_THROWS_AS(enclosure::cell_interval(2, 0.0, 11), precision_error);
  CHECK_NOTHROW(enclosure::localization_disk(200, 0.0, 1.0, 9));
}

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(enclosure::cell_interval(0, -1.0, 3), config_error);  // t = -1 excluded
  CHECK_THROWS_AS(enclosure::cell_interval(0, 1.5, 3), config_error);
  CHECK_THROWS_AS(enclosure::strip_re_range(0, 0.0, 3), config_error);
  CHECK_THROWS_AS(ProblemSpec(4, {}), config_error);
  CHECK_THROWS_AS(ProblemSpec(1, {}), config_error);
  CHECK_THROWS_AS(ProblemSpec(3, {{5, FourierPoly({{0, 1.0}})}}), config_error);
  CHECK_THROWS_AS(ProblemSpec(3, {{2, FourierPoly({{0, {0.0, 0.5}}})}}), config_error);
}

TEST_SUITE_END();
