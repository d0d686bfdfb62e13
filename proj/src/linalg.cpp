#include "sieve/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace sieve {

Matrix expm_i_hermitian(const Matrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Vector phases(h.rows());
  for (int i = 0; i < h.rows(); ++i) {
    const double lambda = es.eigenvalues()(i) * t;
    phases(i) = Complex(std::cos(lambda), std::sin(lambda));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix expm_antihermitian(const Matrix& k) {
  // K = i H with H Hermitian, so exp(K) = exp(i H).
  const Matrix h = Complex(0, -1) * k;
  return expm_i_hermitian(h, 1.0);
}

}  // namespace sieve
