#pragma once

#include <optional>
#include <vector>

#include "sieve/types.hpp"

namespace sieve {

enum class CutoffKind { None, Exponential, Hard };
enum class EnvironmentKind { Oscillator, Spin };

/// Power-law spectral density J(w) = lambda * w^s * cutoff(w), w >= 0.
struct SpectralDensity {
  double exponent = 1.0;
  double amplitude = 1.0;
  CutoffKind cutoff = CutoffKind::Exponential;
  double cutoff_frequency = 10.0;

  double operator()(double omega) const;

  static SpectralDensity ohmic(double lambda = 1.0, double omega_c = 10.0) {
    return {1.0, lambda, CutoffKind::Exponential, omega_c};
  }
  static SpectralDensity power_law(double s, double lambda = 1.0,
                                   CutoffKind cut = CutoffKind::Exponential,
                                   double omega_c = 10.0) {
    return {s, lambda, cut, omega_c};
  }
};

struct BathSpec {
  SpectralDensity spectral;
  double beta = 1.0;  // inverse temperature, +infinity = zero temperature
  EnvironmentKind kind = EnvironmentKind::Oscillator;
};

/// J(w) for oscillator environments, J(w)*tanh(beta w / 2) for spin ones.
double effective_J(const BathSpec& bath, double omega);

/// Normal diffusion coefficient D at block frequency omega:
/// (pi/2) * J_eff(omega) * coth(beta omega / 2).
double normal_diffusion(const BathSpec& bath, double omega);

/// Damping coefficient gamma = (pi/2) * J_eff(omega) / omega.
double damping(const BathSpec& bath, double omega);

/// Zero-frequency diffusion D0. nullopt when divergent (oscillator sub-Ohmic).
std::optional<double> zero_frequency_diffusion(const BathSpec& bath);

/// Anomalous diffusion f = -(1/omega) Int_0^inf nu(tau) sin(omega tau) dtau,
/// evaluated as a principal-value frequency integral. Requires a cutoff.
double anomalous_diffusion(const BathSpec& bath, double omega);

/// Frequency shift squared = -Int_0^inf eta(tau) cos(omega tau) dtau.
double frequency_shift_sq(const BathSpec& bath, double omega);

/// Noise kernel nu(tau); quadrature of the defining frequency integral.
double noise_kernel(const BathSpec& bath, double tau);

/// Dissipation kernel eta(tau).
double dissipation_kernel(const BathSpec& bath, double tau);

struct BlockCoefficients {
  double omega = 0.0;
  double D = 0.0;
  double gamma = 0.0;
  double f = 0.0;
  double shift_sq = 0.0;
  bool anomalous_available = false;
};

struct BathCoefficients {
  std::vector<BlockCoefficients> blocks;
  std::optional<double> D0 = 0.0;  // nullopt = divergent

  /// Direct construction with D_alpha = D and omega*gamma/D = gamma_over_D for
  /// every block (the spin convention), bypassing any spectral density.
  static BathCoefficients from_gamma_over_D(const std::vector<double>& frequencies, double D,
                                            double gamma_over_D);
};

/// Physical coefficients for every block frequency plus D0. The anomalous
/// pieces are filled only when the spectral density has a cutoff.
BathCoefficients bath_coefficients(const BathSpec& bath, const std::vector<double>& frequencies);

}  // namespace sieve
