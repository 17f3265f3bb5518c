#pragma once

#include <complex>
#include <map>

namespace ptbloch {

/// A 1-periodic trigonometric polynomial stored as a sparse map from integer
/// frequency m to its complex coefficient c(m):
///
///   p(x) = sum_m c(m) * exp(i * 2*pi * m * x)
///
/// Exact zero coefficients are dropped, so the zero polynomial has an empty
/// map and bandwidth 0.  Values are immutable after construction; every
/// operation is a pure function and safe to use concurrently.
class FourierPoly {
 public:
  using coeff_map = std::map<int, std::complex<double>>;

  FourierPoly() = default;
  explicit FourierPoly(coeff_map coeffs);

  const coeff_map& coeffs() const { return coeffs_; }
  std::complex<double> coeff(int m) const;

  /// Smallest M with c(m) = 0 for |m| > M; 0 for the zero polynomial.
  int bandwidth() const { return bandwidth_; }
  bool is_zero() const { return coeffs_.empty(); }

  std::complex<double> evaluate(double x) const;

  /// s-th derivative: coefficients become (i*2*pi*m)^s * c(m).
  FourierPoly derivative(unsigned s) const;

  /// L2[0,1] norm via Parseval: sqrt(sum_m |c(m)|^2).
  double l2_norm() const;

  /// PT-symmetry (conj(p(-x)) == p(x)) holds iff every coefficient is real.
  bool is_pt_symmetric(double tol) const;

  FourierPoly scaled(std::complex<double> alpha) const;

  bool operator==(const FourierPoly& other) const { return coeffs_ == other.coeffs_; }

 private:
  coeff_map coeffs_;
  int bandwidth_ = 0;
};

}  // namespace ptbloch
