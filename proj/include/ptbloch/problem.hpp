#pragma once

#include <map>

#include "ptbloch/fourier_poly.hpp"

namespace ptbloch {

/// Definition of the differential operator: odd order n > 1 and the lower-order
/// coefficients p_v for v = 2..n (absent entries are zero).  Every coefficient
/// must be PT-symmetric, i.e. have real Fourier coefficients up to pt_tol.
class ProblemSpec {
 public:
  static constexpr double pt_tol = 1e-12;

  /// Throws config_error on even n, n <= 1, v outside 2..n, or a
  /// non-PT-symmetric coefficient.
  ProblemSpec(int n, std::map<int, FourierPoly> coeffs);

  int order() const { return n_; }
  const std::map<int, FourierPoly>& coeffs() const { return coeffs_; }

  /// p_v, or the zero polynomial when absent.
  const FourierPoly& coefficient(int v) const;

  /// max_v bandwidth(p_v); 0 for the free operator.
  int max_bandwidth() const { return max_bandwidth_; }

  bool is_free() const;

  ProblemSpec scaled(double alpha) const;

 private:
  int n_;
  std::map<int, FourierPoly> coeffs_;
  int max_bandwidth_ = 0;
};

}  // namespace ptbloch
