#include "ptbloch/galerkin.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ptbloch/errors.hpp"

namespace ptbloch::galerkin {

namespace {

constexpr double pi = std::numbers::pi;

double int_pow(double base, int e) {
  double r = 1.0;
  for (int j = 0; j < e; ++j) r *= base;
  return r;
}

int label_of(const Eigen::VectorXcd& psi, int K) {
  // Scan in order 0, -1, 1, -2, 2, ... so ties resolve toward smaller |k|.
  int best = 0;
  double best_mag = std::abs(psi(K));
  for (int a = 1; a <= K; ++a) {
    for (int k : {-a, a}) {
      const double mag = std::abs(psi(k + K));
      if (mag > best_mag) {
        best_mag = mag;
        best = k;
      }
    }
  }
  return best;
}

}  // namespace

double BlochMatrix::inf_norm() const {
  double result = 0.0;
  for (int r = 0; r < entries.rows(); ++r) {
    result = std::max(result, entries.row(r).cwiseAbs().sum());
  }
  return result;
}

bool BlochMatrix::is_real() const {
  for (int r = 0; r < entries.rows(); ++r) {
    for (int c = 0; c < entries.cols(); ++c) {
      if (entries(r, c).imag() != 0.0) return false;
    }
  }
  return true;
}

BlochMatrix assemble(const ProblemSpec& spec, double t, double eps, int K) {
  if (!(t > -1.0 && t <= 1.0)) {
    std::ostringstream os;
    os << "quasimomentum t must lie in (-1, 1], got t=" << t;
    throw config_error(os.str());
  }
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw config_error("coupling eps must lie in [0, 1]");
  }
  const int bandwidth = spec.max_bandwidth();
  if (K < bandwidth + 2) {
    throw config_error("truncation K=" + std::to_string(K) +
                       " too small for coefficient bandwidth " +
                       std::to_string(bandwidth) + " (need K >= bandwidth + 2)");
  }
  const int n = spec.order();
  if (n * std::log2(2.0 * pi * (K + 1)) > 1000.0) {
    throw precision_error("(2*pi*K)^n exceeds the double exponent budget");
  }

  BlochMatrix matrix;
  matrix.n = n;
  matrix.t = t;
  matrix.eps = eps;
  matrix.K = K;
  matrix.bandwidth = bandwidth;
  matrix.entries = Eigen::MatrixXcd::Zero(2 * K + 1, 2 * K + 1);

  for (int p = -K; p <= K; ++p) {
    const double theta = 2.0 * pi * p + pi * t;
    matrix.entries(p + K, p + K) = int_pow(theta, n);
    if (eps == 0.0) continue;
    for (const auto& [v, poly] : spec.coeffs()) {
      const double weight = eps * int_pow(theta, n - v);
      for (const auto& [m, c] : poly.coeffs()) {
        const int k = p + m;  // c_v(k - p) couples column p into row k
        if (k < -K || k > K) continue;
        matrix.entries(k + K, p + K) += weight * c;
      }
    }
  }
  return matrix;
}

int trusted_window(int K, int bandwidth) {
  // Half of the usable width: labels this far inside the truncation boundary
  // are insensitive to it (validated by truncation_error_estimate).
  const int w = (K - bandwidth + 1) / 2;
  return std::max(w, 1);
}

namespace {

EigenSolution diagonal_solution(const BlochMatrix& matrix) {
  EigenSolution sol;
  sol.t = matrix.t;
  sol.eps = matrix.eps;
  sol.K = matrix.K;
  sol.trusted_window = trusted_window(matrix.K, matrix.bandwidth);
  const int dim = matrix.dim();
  sol.pairs.reserve(dim);
  for (int p = -matrix.K; p <= matrix.K; ++p) {
    EigenPair pair;
    pair.lambda = matrix.entry(p, p);
    pair.psi = Eigen::VectorXcd::Zero(dim);
    pair.psi(p + matrix.K) = 1.0;
    pair.k_label = p;
    sol.pairs.push_back(std::move(pair));
  }
  return sol;
}

}  // namespace

EigenSolution eigensystem(const BlochMatrix& matrix) {
  const int dim = matrix.dim();
  bool diagonal = true;
  for (int r = 0; r < dim && diagonal; ++r) {
    for (int c = 0; c < dim; ++c) {
      if (r != c && matrix.entries(r, c) != std::complex<double>(0.0, 0.0)) {
        diagonal = false;
        break;
      }
    }
  }
  if (diagonal) return diagonal_solution(matrix);

  EigenSolution sol;
  sol.t = matrix.t;
  sol.eps = matrix.eps;
  sol.K = matrix.K;
  sol.trusted_window = trusted_window(matrix.K, matrix.bandwidth);

  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;
  if (matrix.is_real()) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(matrix.entries.real());
    if (solver.info() != Eigen::Success) {
      throw numeric_error("real eigensolver failed to converge (t=" +
                          std::to_string(matrix.t) + ", eps=" + std::to_string(matrix.eps) +
                          ", K=" + std::to_string(matrix.K) + ")");
    }
    values = solver.eigenvalues();
    vectors = solver.eigenvectors();
  } else {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(matrix.entries);
    if (solver.info() != Eigen::Success) {
      throw numeric_error("complex eigensolver failed to converge (t=" +
                          std::to_string(matrix.t) + ", eps=" + std::to_string(matrix.eps) +
                          ", K=" + std::to_string(matrix.K) + ")");
    }
    values = solver.eigenvalues();
    vectors = solver.eigenvectors();
  }

  const double residual_budget = 1e-8 * matrix.inf_norm();
  sol.pairs.reserve(dim);
  for (int j = 0; j < dim; ++j) {
    EigenPair pair;
    pair.lambda = values(j);
    pair.psi = vectors.col(j) / vectors.col(j).norm();
    pair.k_label = label_of(pair.psi, matrix.K);
    const double residual = (matrix.entries * pair.psi - pair.lambda * pair.psi).norm();
    if (!(residual <= residual_budget)) {
      std::ostringstream os;
      os << "eigenpair residual " << residual << " exceeds budget " << residual_budget
         << " (t=" << matrix.t << ", eps=" << matrix.eps << ", K=" << matrix.K << ")";
      throw numeric_error(os.str());
    }
    sol.pairs.push_back(std::move(pair));
  }
  return sol;
}

std::map<int, double> truncation_error_estimate(const ProblemSpec& spec, double t,
                                                double eps, int K) {
  const EigenSolution coarse = eigensystem(assemble(spec, t, eps, K));
  const EigenSolution fine = eigensystem(assemble(spec, t, eps, 2 * K));

  std::map<int, double> estimates;
  for (const auto& pair : coarse.pairs) {
    if (!coarse.trusted(pair)) continue;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& other : fine.pairs) {
      if (other.k_label != pair.k_label) continue;
      best = std::min(best, std::abs(other.lambda - pair.lambda));
    }
    auto it = estimates.find(pair.k_label);
    if (it == estimates.end() || best > it->second) estimates[pair.k_label] = best;
  }
  return estimates;
}

}  // namespace ptbloch::galerkin
