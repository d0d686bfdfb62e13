#pragma once

#include <vector>

#include "sieve/adjoint.hpp"
#include "sieve/bath.hpp"
#include "sieve/functional.hpp"
#include "sieve/types.hpp"

namespace sieve {

/// Constant-coefficient master operator
///   drho = -i [H, rho] - [A, [B_D, rho]] + i [A, [B_g, rho}]
/// with B_D = sum_jk a_j D_jk X_k and B_g = sum_jk a_j gamma_jk X_k.
struct MasterOperator {
  Matrix hamiltonian;
  Matrix coupling_op;
  Matrix b_diffusion;
  Matrix b_damping;
  RealMatrix D;      // full N x N diffusion matrix in the original basis
  RealMatrix gamma;  // full N x N damping matrix

  Matrix apply(const Matrix& rho) const;
};

MasterOperator make_master_operator(const LieModel& model, const AdjointDecomposition& decomp,
                                    const BathCoefficients& coeffs);

struct Trajectory {
  std::vector<double> times;
  std::vector<Matrix> states;
  std::vector<double> entropies;        // 1 - Tr rho^2
  std::vector<double> min_eigenvalues;  // smallest eigenvalue of rho(t)
};

/// ds/dt / 2 at time t with covariances frozen in the initial state and the
/// time dependence carried by R(t) alone.
double instantaneous_rate(const PureState& state, const LieModel& model,
                          const AdjointDecomposition& decomp, const BathCoefficients& coeffs,
                          double t);

/// Long-time average of the pre-averaged entropy rate. The window is stretched
/// to a common period when block frequencies are commensurate; the sample
/// count is raised above the Nyquist limit of the trigonometric integrand.
double averaged_rate_oracle(const PureState& state, const LieModel& model,
                            const AdjointDecomposition& decomp, const BathCoefficients& coeffs,
                            double t_avg, int n_samples);

/// Classical fixed-step 4th-order integration with a step-doubling error check
/// (error estimate above 1e-8 per step raises StepTooLargeError after repeated
/// violations). `stride` controls how often samples are recorded.
Trajectory integrate(const MasterOperator& op, const Matrix& rho0, double t_end, double dt,
                     int stride = 1);

/// 1 - Tr[rho^2].
double linear_entropy(const Matrix& rho);

}  // namespace sieve
