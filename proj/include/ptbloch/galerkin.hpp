#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <vector>

#include "ptbloch/problem.hpp"

namespace ptbloch::galerkin {

/// Truncation of the Bloch operator in the basis e_k(x) = exp(i(2*pi*k + pi*t)x),
/// |k| <= K.  Row/column indices run over k, p in [-K, K]:
///
///   entry(k,p) = (2*pi*p + pi*t)^n [k=p]
///              + eps * sum_v (2*pi*p + pi*t)^(n-v) c_v(k-p).
///
/// The matrix is banded with half-width max_v bandwidth(p_v) and real whenever
/// every coefficient has real Fourier coefficients.
struct BlochMatrix {
  int n = 3;
  double t = 0.0;
  double eps = 0.0;
  int K = 0;
  int bandwidth = 0;  // max_v bandwidth(p_v)
  Eigen::MatrixXcd entries;

  int dim() const { return 2 * K + 1; }
  std::complex<double> entry(int k, int p) const { return entries(k + K, p + K); }
  double inf_norm() const;
  bool is_real() const;
};

/// Requires t in (-1, 1], eps in [0, 1], and K >= bandwidth + 2.
BlochMatrix assemble(const ProblemSpec& spec, double t, double eps, int K);

struct EigenPair {
  std::complex<double> lambda;
  Eigen::VectorXcd psi;  // unit Euclidean norm, index i <-> k = i - K
  int k_label = 0;       // argmax_k |psi_k|, ties toward smaller |k|
};

struct EigenSolution {
  double t = 0.0;
  double eps = 0.0;
  int K = 0;
  int trusted_window = 1;  // labels with |k_label| <= trusted_window are trusted
  std::vector<EigenPair> pairs;

  std::complex<double> psi(const EigenPair& pair, int k) const { return pair.psi(k + K); }
  bool trusted(const EigenPair& pair) const {
    return std::abs(pair.k_label) <= trusted_window;
  }
};

/// All 2K+1 eigenpairs.  Real matrices go through the real Schur path, so real
/// eigenvalues come back with exactly zero imaginary part and nonreal ones in
/// exact conjugate pairs.  Residuals ||A psi - lambda psi|| are checked against
/// 1e-8 * ||A||_inf.
EigenSolution eigensystem(const BlochMatrix& matrix);

int trusted_window(int K, int bandwidth);

/// Distance from each trusted eigenvalue at size K to the nearest same-label
/// eigenvalue at size 2K; keyed by label.
std::map<int, double> truncation_error_estimate(const ProblemSpec& spec, double t,
                                                double eps, int K);

}  // namespace ptbloch::galerkin
