#pragma once

#include <array>

#include "sieve/algebra.hpp"
#include "sieve/functional.hpp"
#include "sieve/types.hpp"

namespace sieve {

/// Spin-j generators in the J_z eigenbasis (entries j, j-1, ..., -j) with the
/// spin-boson coupling A = -J_x and free Hamiltonian Omega * J_z.
struct SpinModel {
  double j = 0.5;
  double omega = 1.0;
  Matrix jx, jy, jz;

  int dim() const { return static_cast<int>(std::lround(2.0 * j)) + 1; }
  std::vector<Matrix> generators() const { return {jx, jy, jz}; }
  /// As a validated Lie model (f = Levi-Civita, h0_scale = Omega, a = (-1,0,0)).
  LieModel lie_model() const;
};

SpinModel spin_generators(double j, double omega = 1.0);

/// |n(theta, phi)> = exp(i theta (sin(phi) Jx - cos(phi) Jy)) |j, -j>.
PureState coherent_state(const SpinModel& model, double theta, double phi);

/// s-bar/2D on a spin coherent state: j (1 - sin^2(theta)/2 - (gamma/D) cos(theta)).
double coherent_entropy(double j, double theta, double gamma_over_D);

/// gamma/D for a spin-boson block: tanh(beta Omega / 2).
double gamma_over_D_from_beta(double beta, double omega);

/// Analytic spin-1 pointer state at a given gamma/D in [0, 1].
struct Spin1Solution {
  double gamma_over_D = 0.0;
  double mu0 = 0.0;       // selected root of 2 mu^3 - 3 mu^2 + (gamma/D)^2 = 0
  double r = 0.0;         // |1,0> amplitude
  double q_abs_sq = 0.0;  // |q|^2 of the |1,1> amplitude
  double k = 0.0;         // amplitude ratio; +-inf at the gamma/D = mu point
  PureState state;        // canonical-gauge member of the U(1) family
  double min_value = 0.0; // s-bar_min / 2D
};

Spin1Solution spin1_solve(double gamma_over_D);

struct Spin1Observables {
  double mean_jz = 0.0;
  double var_jx = 0.0;
  double var_jy = 0.0;
};

/// <J_z>, Var(J_x), Var(J_y) from the closed forms in the (q, r, s) chart.
Spin1Observables spin1_observables(const Spin1Solution& solution);

/// Member of the U(1) pointer family: exp(i psi J_z) applied to the solution state.
PureState spin1_family_state(const Spin1Solution& solution, double psi);

struct CoherentDecomposition {
  std::array<double, 2> theta{};
  std::array<double, 2> phi{};
  std::array<Complex, 2> coefficient{};
  double residual = 0.0;
};

struct CoherentOverlapReport {
  double max_overlap = 0.0;  // squared overlap
  double theta = 0.0;
  double phi = 0.0;
  CoherentDecomposition decomposition;  // onto the best state and its antipode
};

/// Best coherent-state overlap (grid search plus local refinement) and the
/// two-orthogonal-coherent-state decomposition of the given state.
CoherentOverlapReport coherent_overlap_analysis(const SpinModel& model, const PureState& state);

}  // namespace sieve
