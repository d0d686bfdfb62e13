#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace sieve {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Structure constants f[i](j,k) of [X_i, X_j] = i sum_k f_ijk X_k.
using StructureConstants = std::vector<RealMatrix>;

namespace tol {
inline constexpr double hermiticity = 1e-10;
inline constexpr double commutation = 1e-10;
inline constexpr double jacobi = 1e-10;
inline constexpr double antisymmetry = 1e-10;
inline constexpr double orthogonality = 1e-10;
inline constexpr double reconstruction = 1e-10;
inline constexpr double state_norm = 1e-12;
inline constexpr double metric_zero = 1e-9;
}  // namespace tol

}  // namespace sieve
