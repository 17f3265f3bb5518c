#include <doctest.h>

#include <cmath>
#include <random>

#include "ptbloch/fourier_poly.hpp"
#include "support.hpp"

using ptbloch::FourierPoly;
using support::pi;

TEST_SUITE_BEGIN("fourier");

TEST_CASE("evaluate") {
  const FourierPoly zero;
  CHECK(zero.evaluate(0.37) == std::complex<double>(0.0, 0.0));

  const FourierPoly cosine({{1, 1.0}, {-1, 1.0}});  // 2cos(2*pi*x)
  CHECK(cosine.evaluate(0.0).real() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(cosine.evaluate(0.0).imag()) < 1e-15);
  CHECK(std::abs(cosine.evaluate(0.25)) < 1e-12);  // 2cos(pi/2)

  for (int j = 0; j < 50; ++j) {
    const double x = j / 50.0;
    CHECK(std::abs(cosine.evaluate(x) - 2.0 * std::cos(2.0 * pi * x)) < 1e-13);
  }
}

TEST_CASE("derivative") {
  const FourierPoly cosine({{1, 1.0}, {-1, 1.0}});
  CHECK(cosine.derivative(0) == cosine);

  const FourierPoly d1 = cosine.derivative(1);  // -4*pi*sin(2*pi*x)
  CHECK(d1.coeff(1) == std::complex<double>(0.0, 2.0 * pi));
  CHECK(d1.coeff(-1) == std::complex<double>(0.0, -2.0 * pi));
  for (int j = 0; j < 20; ++j) {
    const double x = j / 20.0;
    CHECK(std::abs(d1.evaluate(x) - (-4.0 * pi * std::sin(2.0 * pi * x))) < 1e-12);
  }

  const FourierPoly constant({{0, 5.0}});
  CHECK(constant.derivative(1).is_zero());
  CHECK(constant.derivative(1).bandwidth() == 0);
}

TEST_CASE("l2 norm against the quadrature oracle") {
  CHECK(FourierPoly().l2_norm() == 0.0);

  const FourierPoly cosine({{1, 1.0}, {-1, 1.0}});
  const double expected = support::quadrature_l2_norm(cosine);
  CHECK(cosine.l2_norm() == doctest::Approx(expected).epsilon(1e-12));
  CHECK(cosine.l2_norm() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

  const FourierPoly d1 = cosine.derivative(1);
  CHECK(d1.l2_norm() == doctest::Approx(support::quadrature_l2_norm(d1)).epsilon(1e-12));
  CHECK(d1.l2_norm() == doctest::Approx(2.0 * std::sqrt(2.0) * pi).epsilon(1e-14));
}

TEST_CASE("pt symmetry predicate") {
  CHECK(FourierPoly({{1, 1.0}, {-1, 1.0}}).is_pt_symmetric(0.0));
  CHECK_FALSE(FourierPoly({{1, {0.0, 1.0}}}).is_pt_symmetric(1e-12));
  CHECK(FourierPoly({{2, {3.0, 1e-15}}}).is_pt_symmetric(1e-12));
}

TEST_CASE("parseval property on random polynomials") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const FourierPoly p = support::random_poly(rng, 8, trial % 2 == 0);
    const double direct = p.l2_norm();
    const double oracle = support::quadrature_l2_norm(p);
    CHECK(std::abs(direct - oracle) <= 1e-10 * (1.0 + oracle));
  }
}

TEST_CASE("derivative commutes with evaluation (central differences)") {
  std::mt19937_64 rng(7);
  const double h = 1e-6;
  for (int trial = 0; trial < 10; ++trial) {
    const FourierPoly p = support::random_poly(rng, 8);
    const FourierPoly d1 = p.derivative(1);
    const double budget = 1e-4 * (1.0 + p.l2_norm() * (2.0 * pi * p.bandwidth()));
    for (int j = 0; j < 25; ++j) {
      const double x = j / 25.0;
      const auto numeric = (p.evaluate(x + h) - p.evaluate(x - h)) / (2.0 * h);
      CHECK(std::abs(numeric - d1.evaluate(x)) < budget);
    }
  }
}

TEST_CASE("pt symmetry matches the pointwise definition") {
  std::mt19937_64 rng(11);
  const FourierPoly p = support::random_poly(rng, 6, true);
  for (int j = 0; j < 100; ++j) {
    const double x = j / 100.0;
    CHECK(std::abs(std::conj(p.evaluate(-x)) - p.evaluate(x)) < 1e-12);
  }
}

TEST_CASE("bandwidth bookkeeping") {
  CHECK(FourierPoly().bandwidth() == 0);
  const FourierPoly p({{3, 0.0}, {1, 2.0}});  // exact zeros dropped
  CHECK(p.bandwidth() == 1);
  CHECK(p.coeffs().size() == 1);
  CHECK(FourierPoly({{-5, 1.0}, {2, 1.0}}).bandwidth() == 5);
}

TEST_CASE("scaling") {
  const FourierPoly cosine({{1, 1.0}, {-1, 1.0}});
  const FourierPoly half = cosine.scaled(0.5);
  CHECK(half.coeff(1) == std::complex<double>(0.5, 0.0));
  CHECK(half.l2_norm() == doctest::Approx(0.5 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(cosine.scaled(0.0).is_zero());
}

TEST_SUITE_END();
