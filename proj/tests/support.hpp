#pragma once

// Shared fixtures and independent oracles for the test suites.  The oracles
// here (quadrature, pointwise operator application) deliberately avoid the
// library's coefficient algebra so they can falsify it.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "ptbloch/fourier_poly.hpp"
#include "ptbloch/problem.hpp"

namespace support {

constexpr double pi = std::numbers::pi;
using complexd = std::complex<double>;

/// p_2 = a * 2cos(2*pi*x), p_3 = 0 at order 3: the reference operator family.
inline ptbloch::ProblemSpec cos_spec(double a) {
  return ptbloch::ProblemSpec(3, {{2, ptbloch::FourierPoly({{1, a}, {-1, a}})}});
}

inline ptbloch::ProblemSpec free_spec(int n = 3) { return ptbloch::ProblemSpec(n, {}); }

/// Composite trapezoid over [0, 1]; spectrally exact for 1-periodic trig
/// polynomials of bandwidth < intervals.
template <class F>
complexd trapezoid(F f, int intervals = 512) {
  complexd sum = 0.5 * (f(0.0) + f(1.0));
  for (int j = 1; j < intervals; ++j) {
    sum += f(static_cast<double>(j) / intervals);
  }
  return sum / static_cast<double>(intervals);
}

/// sqrt of the quadrature of |p(x)|^2: the Parseval oracle.
inline double quadrature_l2_norm(const ptbloch::FourierPoly& p, int intervals = 512) {
  const complexd value = trapezoid(
      [&](double x) { return complexd(std::norm(p.evaluate(x)), 0.0); }, intervals);
  return std::sqrt(value.real());
}

/// Pointwise application of the differential expression to the basis function
/// e_p(x) = exp(i(2*pi*p + pi*t)x), with the free part unscaled and the
/// lower-order part scaled by eps.  Complex powers are kept symbolic-free:
/// everything is evaluated numerically, independent of the matrix assembly.
inline complexd apply_operator_to_basis(const ptbloch::ProblemSpec& spec, double t,
                                        double eps, int p, double x) {
  const complexd i(0.0, 1.0);
  const double theta = 2.0 * pi * p + pi * t;
  const complexd e_p = std::exp(i * theta * x);
  const int n = spec.order();
  complexd result = std::pow(-i, n) * std::pow(i * theta, n) * e_p;
  for (const auto& [v, poly] : spec.coeffs()) {
    result += eps * std::pow(-i, n - v) * poly.evaluate(x) *
              std::pow(i * theta, n - v) * e_p;
  }
  return result;
}

/// Quadrature oracle for one matrix entry (l(e_p), e_k).
inline complexd quadrature_entry(const ptbloch::ProblemSpec& spec, double t, double eps,
                                 int k, int p, int intervals = 512) {
  const complexd i(0.0, 1.0);
  const double theta_k = 2.0 * pi * k + pi * t;
  return trapezoid(
      [&](double x) {
        return apply_operator_to_basis(spec, t, eps, p, x) * std::exp(-i * theta_k * x);
      },
      intervals);
}

/// Random trigonometric polynomial with bandwidth <= max_bandwidth.  Real
/// coefficients when pt_symmetric (the PT-symmetric class).
inline ptbloch::FourierPoly random_poly(std::mt19937_64& rng, int max_bandwidth,
                                        bool pt_symmetric = true) {
  std::uniform_real_distribution<double> amplitude(-2.0, 2.0);
  std::bernoulli_distribution keep(0.7);
  ptbloch::FourierPoly::coeff_map coeffs;
  for (int m = -max_bandwidth; m <= max_bandwidth; ++m) {
    if (!keep(rng)) continue;
    coeffs[m] = pt_symmetric ? complexd(amplitude(rng), 0.0)
                             : complexd(amplitude(rng), amplitude(rng));
  }
  return ptbloch::FourierPoly(std::move(coeffs));
}

inline ptbloch::ProblemSpec random_spec(std::mt19937_64& rng, int n, int max_bandwidth) {
  std::map<int, ptbloch::FourierPoly> coeffs;
  for (int v = 2; v <= n; ++v) {
    coeffs.emplace(v, random_poly(rng, max_bandwidth));
  }
  return ptbloch::ProblemSpec(n, std::move(coeffs));
}

}  // namespace support
