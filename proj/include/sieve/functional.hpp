#pragma once

#include <vector>

#include "sieve/adjoint.hpp"
#include "sieve/bath.hpp"
#include "sieve/types.hpp"

namespace sieve {

struct PureState {
  Vector amplitudes;

  explicit PureState(Vector psi);
  static PureState normalized(Vector psi);
  int dim() const { return static_cast<int>(amplitudes.size()); }
};

/// Real part of <psi|M|psi> with explicit Hermitization.
double expectation(const PureState& state, const Matrix& op);
double variance(const PureState& state, const Matrix& op);

/// C_mn = <{X_m, X_n}> - 2 <X_m><X_n> in the given state.
RealMatrix covariance(const PureState& state, const std::vector<Matrix>& generators);

/// The coefficient of <X_N> in the block terms: Omega^2 gamma / D as printed
/// in the general formula, or Omega gamma / D after the X_N rescaling used in
/// the spin-boson reading (gamma/D = tanh(beta Omega / 2)).
enum class GammaTermConvention { AsPrinted, Rescaled };

struct BlockTerm {
  int alpha = 0;
  double coupling_sq = 0.0;  // ||a~_alpha||^2
  double D = 0.0;
  double variance_sum = 0.0;
  double linear_term = 0.0;  // contribution to the total, includes coupling_sq
};

struct ZeroModeTerm {
  int row = 0;             // canonical-frame row
  double d0_term = 0.0;    // a~_m^2 D0 Var(X~_m)
  double gamma_term = 0.0; // i <a~| gamma . ad~ a~> <X~_m>, X_N handled per block
};

struct EntropyReport {
  double total = 0.0;  // s-bar / 2
  std::vector<BlockTerm> per_block;
  std::vector<ZeroModeTerm> zero_modes;
};

/// Time-averaged entropy production s-bar/2 for a pure initial state.
EntropyReport entropy_production(const PureState& state, const AdjointDecomposition& decomp,
                                 const BathCoefficients& coeffs,
                                 GammaTermConvention convention = GammaTermConvention::AsPrinted);

/// High-temperature metric in the rotated basis: ||a~_alpha||^2 D_alpha on each
/// block, a~_m^2 D0 on spare zero-frequency directions, 0 on the X_N axis.
RealMatrix high_T_metric(const AdjointDecomposition& decomp, const BathCoefficients& coeffs);

/// Sum of generator variances (the group-invariant dispersion minimized by
/// generalized coherent states).
double invariant_dispersion(const PureState& state, const std::vector<Matrix>& generators);

/// Objective of the form sum_k w_k Var(A_k) + sum_m c_m <B_m>.
struct QuadraticFunctional {
  std::vector<std::pair<double, Matrix>> variance_terms;
  std::vector<std::pair<double, Matrix>> linear_terms;

  double value(const PureState& state) const;
  int dim() const;
};

/// The entropy production assembled as a QuadraticFunctional over states.
QuadraticFunctional entropy_functional(const AdjointDecomposition& decomp,
                                       const BathCoefficients& coeffs,
                                       GammaTermConvention convention = GammaTermConvention::AsPrinted);

}  // namespace sieve
