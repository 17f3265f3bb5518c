#include "ptbloch/fourier_poly.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

namespace ptbloch {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

FourierPoly::FourierPoly(coeff_map coeffs) {
  for (auto it = coeffs.begin(); it != coeffs.end();) {
    if (it->second == std::complex<double>(0.0, 0.0)) {
      it = coeffs.erase(it);
    } else {
      ++it;
    }
  }
  coeffs_ = std::move(coeffs);
  bandwidth_ = 0;
  for (const auto& [m, c] : coeffs_) bandwidth_ = std::max(bandwidth_, std::abs(m));
}

std::complex<double> FourierPoly::coeff(int m) const {
  auto it = coeffs_.find(m);
  return it == coeffs_.end() ? std::complex<double>(0.0, 0.0) : it->second;
}

std::complex<double> FourierPoly::evaluate(double x) const {
  std::complex<double> sum(0.0, 0.0);
  for (const auto& [m, c] : coeffs_) {
    const double phase = two_pi * m * x;
    sum += c * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return sum;
}

FourierPoly FourierPoly::derivative(unsigned s) const {
  if (s == 0) return *this;
  coeff_map out;
  for (const auto& [m, c] : coeffs_) {
    // (i*2*pi*m)^s by repeated multiplication; keeps pure-imaginary factors exact.
    std::complex<double> factor(1.0, 0.0);
    for (unsigned j = 0; j < s; ++j) factor *= std::complex<double>(0.0, two_pi * m);
    const std::complex<double> value = factor * c;
    if (value != std::complex<double>(0.0, 0.0)) out.emplace(m, value);
  }
  return FourierPoly(std::move(out));
}

double FourierPoly::l2_norm() const {
  double sum = 0.0;
  for (const auto& [m, c] : coeffs_) sum += std::norm(c);
  return std::sqrt(sum);
}

bool FourierPoly::is_pt_symmetric(double tol) const {
  for (const auto& [m, c] : coeffs_) {
    if (std::abs(c.imag()) > tol) return false;
  }
  return true;
}

FourierPoly FourierPoly::scaled(std::complex<double> alpha) const {
  coeff_map out;
  for (const auto& [m, c] : coeffs_) {
    const std::complex<double> value = alpha * c;
    if (value != std::complex<double>(0.0, 0.0)) out.emplace(m, value);
  }
  return FourierPoly(std::move(out));
}

}  // namespace ptbloch
