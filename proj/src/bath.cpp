#include "sieve/bath.hpp"

#include <cmath>
#include <limits>

#include "sieve/errors.hpp"
#include "sieve/quadrature.hpp"

namespace sieve {

namespace {

constexpr double kPi = 3.14159265358979323846;

double coth_half(double beta, double omega) {
  if (std::isinf(beta)) return 1.0;
  return 1.0 / std::tanh(0.5 * beta * omega);
}

double tanh_half(double beta, double omega) {
  if (std::isinf(beta)) return omega > 0.0 ? 1.0 : 0.0;
  return std::tanh(0.5 * beta * omega);
}

/// Spectral weight of the noise kernel: J_eff * coth. The tanh*coth product
/// cancels exactly for spin environments.
double noise_density(const BathSpec& bath, double omega) {
  if (bath.kind == EnvironmentKind::Spin) return bath.spectral(omega);
  return bath.spectral(omega) * coth_half(bath.beta, omega);
}

double dissipation_density(const BathSpec& bath, double omega) { return effective_J(bath, omega); }

double upper_limit(const SpectralDensity& j) {
  switch (j.cutoff) {
    case CutoffKind::Exponential:
      return j.cutoff_frequency * (50.0 + 3.0 * j.exponent);
    case CutoffKind::Hard:
      return j.cutoff_frequency;
    case CutoffKind::None:
      throw NoCutoffError("spectral density has no cutoff");
  }
  return 0.0;
}

/// PV Int_0^W (g(w) - g(omega)) / (w^2 - omega^2) dw + analytic remainder;
/// the subtracted integrand has a removable singularity at w = omega.
double principal_value(const BathSpec& bath, const std::function<double(double)>& g,
                       double omega, double pole_weight) {
  const double w_max = upper_limit(bath.spectral);
  const double eps = 1e-7 * std::max(omega, 1.0);
  const double slope = (g(omega + eps) - g(omega - eps)) / (2.0 * eps);
  auto integrand = [&](double w) {
    const double t = w - omega;
    if (std::abs(t) < eps) return slope / (w + omega);
    return (g(w) - g(omega)) / (t * (w + omega));
  };

  double value = 0.0;
  quad::Options opts;
  if (bath.spectral.cutoff == CutoffKind::Hard &&
      std::abs(w_max - omega) < 1e-10 * std::max(omega, 1.0))
    throw OutOfRangeError("block frequency sits on the hard cutoff edge");
  if (omega < w_max) {
    value += quad::integrate(integrand, 0.0, omega, opts);
    value += quad::integrate(integrand, omega, std::min(2.0 * omega, w_max), opts);
    if (2.0 * omega < w_max) value += quad::integrate(integrand, 2.0 * omega, w_max, opts);
    // Exact value of the subtracted pole term, PV Int_0^W g(omega)/(w^2-omega^2) dw.
    value += g(omega) / (2.0 * omega) * std::log((w_max - omega) / (w_max + omega));
  } else {
    auto plain = [&](double w) { return g(w) / ((w - omega) * (w + omega)); };
    value = quad::integrate(plain, 0.0, w_max, opts);
    return pole_weight * value;
  }
  return pole_weight * value;
}

/// Sum of oscillatory chunks Int_0^W density(w) * trig(w tau) dw.
double kernel_integral(const BathSpec& bath, const std::function<double(double)>& density,
                       double tau, bool cosine) {
  const double w_max = upper_limit(bath.spectral);
  auto f = [&](double w) { return density(w) * (cosine ? std::cos(w * tau) : std::sin(w * tau)); };
  const double period = std::abs(tau) > 0.0 ? 2.0 * kPi / std::abs(tau) : w_max;
  const double chunk = std::min(w_max, 4.0 * period);
  double total = 0.0, a = 0.0;
  quad::Options opts;
  opts.rel_tol = 1e-10;
  while (a < w_max) {
    const double b = std::min(a + chunk, w_max);
    total += quad::integrate(f, a, b, opts);
    a = b;
  }
  return total;
}

}  // namespace

double SpectralDensity::operator()(double omega) const {
  if (omega <= 0.0) return 0.0;
  double value = amplitude * std::pow(omega, exponent);
  switch (cutoff) {
    case CutoffKind::Exponential:
      value *= std::exp(-omega / cutoff_frequency);
      break;
    case CutoffKind::Hard:
      if (omega > cutoff_frequency) value = 0.0;
      break;
    case CutoffKind::None:
      break;
  }
  return value;
}

double effective_J(const BathSpec& bath, double omega) {
  const double j = bath.spectral(omega);
  return bath.kind == EnvironmentKind::Spin ? j * tanh_half(bath.beta, omega) : j;
}

double normal_diffusion(const BathSpec& bath, double omega) {
  if (bath.kind == EnvironmentKind::Spin) return 0.5 * kPi * bath.spectral(omega);
  return 0.5 * kPi * bath.spectral(omega) * coth_half(bath.beta, omega);
}

double damping(const BathSpec& bath, double omega) {
  return 0.5 * kPi * effective_J(bath, omega) / omega;
}

std::optional<double> zero_frequency_diffusion(const BathSpec& bath) {
  const double s = bath.spectral.exponent;
  if (bath.kind == EnvironmentKind::Spin) return 0.0;  // (pi/2) lim J = 0 for s > 0
  if (s < 1.0) return std::nullopt;
  if (s > 1.0) return 0.0;
  if (std::isinf(bath.beta)) return 0.0;
  return kPi * bath.spectral.amplitude / bath.beta;
}

double anomalous_diffusion(const BathSpec& bath, double omega) {
  auto g = [&](double w) { return noise_density(bath, w); };
  return principal_value(bath, g, omega, 1.0);
}

double frequency_shift_sq(const BathSpec& bath, double omega) {
  auto g = [&](double w) { return dissipation_density(bath, w) * w; };
  return principal_value(bath, g, omega, -1.0);
}

double noise_kernel(const BathSpec& bath, double tau) {
  return kernel_integral(bath, [&](double w) { return noise_density(bath, w); }, tau, true);
}

double dissipation_kernel(const BathSpec& bath, double tau) {
  return kernel_integral(bath, [&](double w) { return dissipation_density(bath, w); }, tau, false);
}

BathCoefficients BathCoefficients::from_gamma_over_D(const std::vector<double>& frequencies,
                                                     double D, double gamma_over_D) {
  BathCoefficients c;
  for (double w : frequencies)
    c.blocks.push_back({w, D, gamma_over_D * D / w, 0.0, 0.0, false});
  c.D0 = 0.0;
  return c;
}

BathCoefficients bath_coefficients(const BathSpec& bath, const std::vector<double>& frequencies) {
  BathCoefficients c;
  const bool anomalous = bath.spectral.cutoff != CutoffKind::None;
  for (double w : frequencies) {
    BlockCoefficients b;
    b.omega = w;
    b.D = normal_diffusion(bath, w);
    b.gamma = damping(bath, w);
    if (anomalous) {
      b.f = anomalous_diffusion(bath, w);
      b.shift_sq = frequency_shift_sq(bath, w);
      b.anomalous_available = true;
    }
    c.blocks.push_back(b);
  }
  c.D0 = zero_frequency_diffusion(bath);
  return c;
}

}  // namespace sieve
