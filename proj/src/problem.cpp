#include "ptbloch/problem.hpp"

#include <string>

#include "ptbloch/errors.hpp"

namespace ptbloch {

ProblemSpec::ProblemSpec(int n, std::map<int, FourierPoly> coeffs) : n_(n) {
  if (n <= 1 || n % 2 == 0) {
    throw config_error("operator order n must be odd and > 1, got n=" + std::to_string(n));
  }
  for (auto& [v, p] : coeffs) {
    if (v < 2 || v > n) {
      throw config_error("coefficient index v=" + std::to_string(v) +
                         " outside the valid range 2.." + std::to_string(n));
    }
    if (!p.is_pt_symmetric(pt_tol)) {
      throw config_error("coefficient p_" + std::to_string(v) +
                         " is not PT-symmetric (a Fourier coefficient has |Im| > 1e-12)");
    }
    if (!p.is_zero()) max_bandwidth_ = std::max(max_bandwidth_, p.bandwidth());
  }
  coeffs_ = std::move(coeffs);
}

const FourierPoly& ProblemSpec::coefficient(int v) const {
  static const FourierPoly zero;
  auto it = coeffs_.find(v);
  return it == coeffs_.end() ? zero : it->second;
}

bool ProblemSpec::is_free() const {
  for (const auto& [v, p] : coeffs_) {
    if (!p.is_zero()) return false;
  }
  return true;
}

ProblemSpec ProblemSpec::scaled(double alpha) const {
  std::map<int, FourierPoly> out;
  for (const auto& [v, p] : coeffs_) out.emplace(v, p.scaled(alpha));
  return ProblemSpec(n_, std::move(out));
}

}  // namespace ptbloch
