#pragma once

#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "sieve/algebra.hpp"
#include "sieve/functional.hpp"
#include "sieve/types.hpp"

namespace sieve::testing {

inline Matrix random_hermitian(int d, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Matrix m(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m(r, c) = Complex(normal(rng), normal(rng));
  return 0.5 * (m + Matrix(m.adjoint()));
}

/// Independent route for R(t): Pade scaling-and-squaring of exp(-tF).
inline RealMatrix expm_oracle(const RealMatrix& f, double t) {
  return RealMatrix((-t * f).exp());
}

/// Directional derivative of fn along a tangent direction by central
/// differences on the normalized curve.
inline double directional_derivative(const QuadraticFunctional& fn, const PureState& psi,
                                     const Vector& direction, double step) {
  auto at = [&](double h) {
    Vector v = psi.amplitudes + h * direction;
    return fn.value(PureState::normalized(v));
  };
  return (at(step) - at(-step)) / (2.0 * step);
}

}  // namespace sieve::testing
