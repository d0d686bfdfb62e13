#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sieve/functional.hpp"
#include "sieve/types.hpp"

namespace sieve {

struct MinimizeConfig {
  int starts = 64;
  int max_iter = 4000;
  double tol_grad = 1e-8;  // double-precision stationarity floor
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = auto
};

struct SieveResult {
  PureState best_state;
  double best_value = 0.0;
  int starts = 0;
  int converged_runs = 0;
  std::vector<double> value_histogram;  // one local-minimum value per converged run
};

/// Tangent-projected gradient of sum w_k Var(A_k) + sum c_m <B_m> on the unit
/// sphere: 2 (1 - |psi><psi|) [sum w_k (A_k^2 - 2 <A_k> A_k) + sum c_m B_m] |psi>.
Vector riemannian_gradient(const PureState& state, const QuadraticFunctional& fn);

/// Multi-start projected gradient descent with Armijo backtracking.
/// Deterministic for a fixed config, independent of the worker count.
SieveResult minimize(const QuadraticFunctional& fn, int dim, const MinimizeConfig& config = {});

/// Grid minimum over a phase-fixed chart of the state manifold, dim <= 3.
/// Independent of the descent path; used as an oracle.
double brute_force_min(const QuadraticFunctional& fn, int dim, int grid_resolution);

/// Normalized vector of iid complex Gaussians.
PureState haar_random_state(int dim, std::mt19937_64& rng);

/// Canonical gauge: global phase chosen so the largest-magnitude amplitude is
/// real nonnegative.
PureState canonical_phase_state(const PureState& state);

}  // namespace sieve
