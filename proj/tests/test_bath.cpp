#include <doctest.h>

#include <cmath>

#include "sieve/bath.hpp"
#include "sieve/errors.hpp"
#include "sieve/quadrature.hpp"

using namespace sieve;

namespace {

constexpr double kPi = 3.14159265358979323846;

enum class Trig { Cos, Sin };

/// Independent route for the kernel moments: the tau integral is done in
/// closed form under an exp(-eps tau) regulator, the omega integral by
/// quadrature, and eps -> 0 by polynomial extrapolation. No principal-value
/// subtraction is involved.
double abel_moment(const BathSpec& bath, double omega_block, Trig kernel_trig, Trig moment_trig) {
  auto density = [&](double w) {
    if (kernel_trig == Trig::Cos) {  // noise kernel weight
      if (bath.kind == EnvironmentKind::Spin) return bath.spectral(w);
      return bath.spectral(w) / std::tanh(0.5 * bath.beta * w);
    }
    return effective_J(bath, w);  // dissipation kernel weight
  };
  const double w_max = 50.0 * bath.spectral.cutoff_frequency *
                       (bath.spectral.cutoff == CutoffKind::Hard ? 0.02 : 1.0) *
                       (1.0 + bath.spectral.exponent);

  auto integral_at = [&](double eps) {
    auto lorentz_pair = [&](double w) {
      const double dm = w - omega_block, dp = w + omega_block;
      if (moment_trig == Trig::Cos && kernel_trig == Trig::Cos)
        return 0.5 * (eps / (eps * eps + dm * dm) + eps / (eps * eps + dp * dp));
      if (moment_trig == Trig::Sin && kernel_trig == Trig::Sin)
        return 0.5 * (eps / (eps * eps + dm * dm) - eps / (eps * eps + dp * dp));
      if (moment_trig == Trig::Sin && kernel_trig == Trig::Cos)
        return 0.5 * (dp / (eps * eps + dp * dp) - dm / (eps * eps + dm * dm));
      return 0.5 * (dp / (eps * eps + dp * dp) + dm / (eps * eps + dm * dm));
    };
    auto f = [&](double w) { return density(w) * lorentz_pair(w); };
    const double splits[] = {0.0,
                             0.5 * omega_block,
                             omega_block - 10.0 * eps,
                             omega_block - eps,
                             omega_block + eps,
                             omega_block + 10.0 * eps,
                             2.0 * omega_block,
                             w_max};
    double total = 0.0, prev = 0.0;
    quad::Options opts;
    opts.rel_tol = 1e-11;
    for (double s : splits) {
      const double hi = std::clamp(s, 0.0, w_max);
      if (hi > prev) total += quad::integrate(f, prev, hi, opts);
      prev = std::max(prev, hi);
    }
    return total;
  };

  // Neville extrapolation eps -> 0.
  const double eps_nodes[3] = {1e-2 * omega_block, 1e-3 * omega_block, 1e-4 * omega_block};
  double val[3];
  for (int i = 0; i < 3; ++i) val[i] = integral_at(eps_nodes[i]);
  for (int level = 1; level < 3; ++level)
    for (int i = 2; i >= level; --i)
      val[i] = val[i] + (val[i] - val[i - 1]) * eps_nodes[i] / (eps_nodes[i - level] - eps_nodes[i]);
  return val[2];
}

}  // namespace

TEST_CASE("spectral density shapes") {
  const SpectralDensity ohmic = SpectralDensity::ohmic(1.0, 10.0);
  CHECK(ohmic(0.0) == 0.0);
  CHECK(ohmic(1.0) == doctest::Approx(std::exp(-0.1)).epsilon(1e-14));
  const SpectralDensity bare = SpectralDensity::power_law(1.0, 2.0, CutoffKind::None);
  CHECK(bare(1.0) == doctest::Approx(2.0));
  const SpectralDensity hard = SpectralDensity::power_law(1.0, 1.0, CutoffKind::Hard, 5.0);
  CHECK(hard(4.9) > 0.0);
  CHECK(hard(5.1) == 0.0);
}

TEST_CASE("effective_J applies the spin tanh factor") {
  BathSpec bath{SpectralDensity::ohmic(), 1e-9, EnvironmentKind::Spin};
  CHECK(effective_J(bath, 1.0) == doctest::Approx(0.0).epsilon(1e-8));
  bath.kind = EnvironmentKind::Oscillator;
  CHECK(effective_J(bath, 1.0) == doctest::Approx(bath.spectral(1.0)));
  BathSpec cold{SpectralDensity::ohmic(), std::numeric_limits<double>::infinity(),
                EnvironmentKind::Spin};
  CHECK(effective_J(cold, 2.0) == doctest::Approx(cold.spectral(2.0)));
}

TEST_CASE("normal diffusion coefficient") {
  const SpectralDensity bare = SpectralDensity::power_law(1.0, 1.0, CutoffKind::None);

  SUBCASE("high-temperature divergence ~ pi/beta") {
    BathSpec bath{bare, 1e-6, EnvironmentKind::Oscillator};
    CHECK(normal_diffusion(bath, 1.0) == doctest::Approx(kPi * 1e6).epsilon(1e-9));
  }
  SUBCASE("spin environments cancel the thermal factor exactly") {
    BathSpec bath{bare, 0.37, EnvironmentKind::Spin};
    CHECK(normal_diffusion(bath, 2.0) == 0.5 * kPi * bare(2.0));
  }
  SUBCASE("direct evaluation at beta = 2, Omega = 1") {
    BathSpec bath{bare, 2.0, EnvironmentKind::Oscillator};
    CHECK(normal_diffusion(bath, 1.0) == doctest::Approx(2.062511003414438).epsilon(1e-14));
  }
  SUBCASE("zero temperature uses coth -> 1") {
    BathSpec bath{bare, std::numeric_limits<double>::infinity(), EnvironmentKind::Oscillator};
    CHECK(normal_diffusion(bath, 3.0) == doctest::Approx(0.5 * kPi * 3.0));
  }
}

TEST_CASE("damping coefficient and gamma/D ratio") {
  const SpectralDensity bare = SpectralDensity::power_law(1.0, 1.0, CutoffKind::None);
  BathSpec bath{bare, 1.3, EnvironmentKind::Oscillator};
  CHECK(damping(bath, 3.0) == doctest::Approx(0.5 * kPi).epsilon(1e-14));

  for (double beta : {0.05, 0.5, 2.0, 20.0}) {
    for (double omega : {0.3, 1.0, 4.0}) {
      BathSpec b{SpectralDensity::ohmic(0.7, 8.0), beta, EnvironmentKind::Oscillator};
      const double ratio = damping(b, omega) / normal_diffusion(b, omega);
      CHECK(ratio == doctest::Approx(std::tanh(0.5 * beta * omega) / omega).epsilon(1e-12));
      // Same ratio for spin environments.
      b.kind = EnvironmentKind::Spin;
      const double ratio_spin = damping(b, omega) / normal_diffusion(b, omega);
      CHECK(ratio_spin == doctest::Approx(ratio).epsilon(1e-12));
    }
  }

  // gamma/D increases monotonically from 0 toward 1/Omega as beta grows.
  BathSpec b{SpectralDensity::ohmic(), 1e-8, EnvironmentKind::Oscillator};
  double prev = damping(b, 1.0) / normal_diffusion(b, 1.0);
  CHECK(prev < 1e-6);
  for (double beta : {0.1, 0.5, 1.0, 5.0, 50.0}) {
    b.beta = beta;
    const double ratio = damping(b, 1.0) / normal_diffusion(b, 1.0);
    CHECK(ratio > prev);
    prev = ratio;
  }
  CHECK(prev <= 1.0);
  CHECK(prev > 0.99);
}

TEST_CASE("zero-frequency diffusion by spectral exponent") {
  SUBCASE("Ohmic oscillator: pi lambda / beta") {
    BathSpec bath{SpectralDensity::ohmic(1.0, 10.0), 2.0, EnvironmentKind::Oscillator};
    auto d0 = zero_frequency_diffusion(bath);
    REQUIRE(d0.has_value());
    CHECK(*d0 == doctest::Approx(0.5 * kPi).epsilon(1e-14));
  }
  SUBCASE("super-Ohmic oscillator: zero") {
    BathSpec bath{SpectralDensity::power_law(3.0), 2.0, EnvironmentKind::Oscillator};
    CHECK(zero_frequency_diffusion(bath) == 0.0);
  }
  SUBCASE("sub-Ohmic oscillator: divergent") {
    BathSpec bath{SpectralDensity::power_law(0.5), 2.0, EnvironmentKind::Oscillator};
    CHECK_FALSE(zero_frequency_diffusion(bath).has_value());
  }
  SUBCASE("spin environments vanish for any s > 0") {
    BathSpec bath{SpectralDensity::power_law(0.5), 2.0, EnvironmentKind::Spin};
    CHECK(zero_frequency_diffusion(bath) == 0.0);
  }
}

TEST_CASE("noise and dissipation kernels") {
  BathSpec bath{SpectralDensity::ohmic(1.0, 2.0), 1.5, EnvironmentKind::Oscillator};
  CHECK(dissipation_kernel(bath, 0.0) == 0.0);
  // nu is even in tau by its cosine form.
  for (double tau : {0.3, 1.7, 6.0})
    CHECK(noise_kernel(bath, tau) == doctest::Approx(noise_kernel(bath, -tau)).epsilon(1e-12));
  // Known closed form at T -> 0 ... the kernel must decay.
  CHECK(std::abs(noise_kernel(bath, 50.0)) < std::abs(noise_kernel(bath, 0.5)));

  BathSpec no_cut{SpectralDensity::power_law(1.0, 1.0, CutoffKind::None), 1.0,
                  EnvironmentKind::Oscillator};
  CHECK_THROWS_AS(noise_kernel(no_cut, 1.0), NoCutoffError);
  CHECK_THROWS_AS(anomalous_diffusion(no_cut, 1.0), NoCutoffError);
}

TEST_CASE("kernel moments reproduce the closed-form coefficients") {
  BathSpec bath{SpectralDensity::ohmic(0.8, 3.0), 1.2, EnvironmentKind::Oscillator};
  for (double omega : {0.6, 1.0, 2.3}) {
    const double d_tau = abel_moment(bath, omega, Trig::Cos, Trig::Cos);
    CHECK(d_tau == doctest::Approx(normal_diffusion(bath, omega)).epsilon(1e-6));
    const double g_tau = abel_moment(bath, omega, Trig::Sin, Trig::Sin) / omega;
    CHECK(g_tau == doctest::Approx(damping(bath, omega)).epsilon(1e-6));
  }
}

TEST_CASE("anomalous diffusion and frequency shift against the Abel oracle") {
  const struct {
    double lambda, omega_c, beta, omega;
  } cases[] = {{1.0, 3.0, 1.2, 1.0}, {0.5, 8.0, 0.4, 2.2}, {2.0, 1.5, 5.0, 0.7}};
  for (const auto& c : cases) {
    BathSpec bath{SpectralDensity::ohmic(c.lambda, c.omega_c), c.beta,
                  EnvironmentKind::Oscillator};
    const double f_pv = anomalous_diffusion(bath, c.omega);
    const double f_abel = -abel_moment(bath, c.omega, Trig::Cos, Trig::Sin) / c.omega;
    CHECK(f_pv == doctest::Approx(f_abel).epsilon(2e-5));

    const double shift_pv = frequency_shift_sq(bath, c.omega);
    const double shift_abel = -abel_moment(bath, c.omega, Trig::Sin, Trig::Cos);
    CHECK(shift_pv == doctest::Approx(shift_abel).epsilon(2e-5));
  }
}

TEST_CASE("anomalous pieces vanish for a zero spectral density") {
  BathSpec bath{SpectralDensity::ohmic(0.0, 3.0), 1.0, EnvironmentKind::Oscillator};
  CHECK(anomalous_diffusion(bath, 1.0) == 0.0);
  CHECK(frequency_shift_sq(bath, 1.0) == 0.0);
}

TEST_CASE("hard-cutoff principal value stays finite off the edge") {
  BathSpec bath{SpectralDensity::power_law(1.0, 1.0, CutoffKind::Hard, 4.0), 1.0,
                EnvironmentKind::Oscillator};
  CHECK(std::isfinite(anomalous_diffusion(bath, 1.0)));
  CHECK(std::isfinite(frequency_shift_sq(bath, 6.0)));  // block above the cutoff
  CHECK_THROWS_AS(anomalous_diffusion(bath, 4.0), OutOfRangeError);
}

TEST_CASE("bath_coefficients assembles blocks and D0") {
  BathSpec bath{SpectralDensity::ohmic(1.0, 10.0), 2.0, EnvironmentKind::Oscillator};
  const BathCoefficients c = bath_coefficients(bath, {2.0, 0.5});
  REQUIRE(c.blocks.size() == 2);
  CHECK(c.blocks[0].omega == 2.0);
  CHECK(c.blocks[0].D == doctest::Approx(normal_diffusion(bath, 2.0)));
  CHECK(c.blocks[0].gamma == doctest::Approx(damping(bath, 2.0)));
  CHECK(c.blocks[0].anomalous_available);
  REQUIRE(c.D0.has_value());
  CHECK(*c.D0 == doctest::Approx(0.5 * kPi));

  const BathCoefficients direct = BathCoefficients::from_gamma_over_D({2.0}, 1.0, 0.7);
  CHECK(direct.blocks[0].D == 1.0);
  CHECK(direct.blocks[0].gamma * direct.blocks[0].omega == doctest::Approx(0.7));
}
