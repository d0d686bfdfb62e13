#include <doctest.h>

#include <random>

#include "sieve/adjoint.hpp"
#include "sieve/errors.hpp"
#include "sieve/functional.hpp"
#include "sieve/optimizer.hpp"
#include "sieve/qbm.hpp"
#include "sieve/spin.hpp"
#include "support.hpp"

using namespace sieve;

namespace {

PureState pointer_family_state(double psi_phase) {
  Vector v(3);
  v << std::sqrt(5.0 / 16.0) * Complex(std::cos(psi_phase), std::sin(psi_phase)),
      std::sqrt(3.0 / 8.0),
      std::sqrt(5.0 / 16.0) * Complex(std::cos(psi_phase), -std::sin(psi_phase));
  return PureState{v};
}

struct Spin1Setup {
  LieModel model;
  AdjointDecomposition decomp;
  BathCoefficients coeffs;
};

Spin1Setup spin1_setup(double gamma_over_D) {
  Spin1Setup s{spin_generators(1.0).lie_model(), {}, {}};
  s.decomp = decompose_model(s.model);
  s.coeffs = BathCoefficients::from_gamma_over_D(s.decomp.frequencies(), 1.0, gamma_over_D);
  return s;
}

}  // namespace

TEST_CASE("state normalization is enforced") {
  Vector bad(2);
  bad << 1.0, 1.0;
  CHECK_THROWS_AS(PureState{bad}, Error);
  CHECK(PureState::normalized(bad).amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("covariance of eigenstates and basis states") {
  const SpinModel spin = spin_generators(1.0);
  Vector up = Vector::Zero(3);
  up(0) = 1.0;  // |1,1>, eigenstate of J_z
  const RealMatrix c = covariance(PureState{up}, spin.generators());
  CHECK(c(2, 2) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK((c - c.transpose()).norm() == 0.0);

  Vector mid = Vector::Zero(3);
  mid(1) = 1.0;  // |1,0>: Var(J_x) = Var(J_y) = 1, so C_xx = C_yy = 2
  const RealMatrix c0 = covariance(PureState{mid}, spin.generators());
  CHECK(c0(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(c0(1, 1) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("pointer-family covariance splits 3/8 - Re^2 / 3/8 - Im^2") {
  const SpinModel spin = spin_generators(1.0);
  for (double phase : {0.0, 0.4, 1.3}) {
    const PureState psi = pointer_family_state(phase);
    const double q_re = std::sqrt(5.0 / 16.0) * std::cos(phase);
    const double q_im = std::sqrt(5.0 / 16.0) * std::sin(phase);
    CHECK(variance(psi, spin.jx) == doctest::Approx(3.0 / 8.0 - q_re * q_re).epsilon(1e-12));
    CHECK(variance(psi, spin.jy) == doctest::Approx(3.0 / 8.0 - q_im * q_im).epsilon(1e-12));
    CHECK(variance(psi, spin.jx) + variance(psi, spin.jy) ==
          doctest::Approx(7.0 / 16.0).epsilon(1e-12));
  }
}

TEST_CASE("spin-1 entropy production matches the spin-boson closed form") {
  std::mt19937_64 rng(5);
  const SpinModel spin = spin_generators(1.0);
  for (double x : {0.0, 0.3, 1.0}) {
    const Spin1Setup s = spin1_setup(x);
    for (int trial = 0; trial < 20; ++trial) {
      const PureState psi = haar_random_state(3, rng);
      const EntropyReport report =
          entropy_production(psi, s.decomp, s.coeffs, GammaTermConvention::Rescaled);
      const double expected = variance(psi, spin.jx) + variance(psi, spin.jy) +
                              x * expectation(psi, spin.jz);
      CHECK(report.total == doctest::Approx(expected).epsilon(1e-12));
      // Report parts add up to the total.
      double parts = 0.0;
      for (const auto& b : report.per_block)
        parts += b.coupling_sq * b.D * b.variance_sum + b.linear_term;
      for (const auto& z : report.zero_modes) parts += z.d0_term + z.gamma_term;
      CHECK(report.total == doctest::Approx(parts).epsilon(1e-12));
    }
  }
}

TEST_CASE("zero coupling produces zero entropy") {
  LieModel model = spin_generators(1.0).lie_model();
  model.coupling.setZero();
  const AdjointDecomposition d = decompose_model(model);
  const BathCoefficients c = BathCoefficients::from_gamma_over_D(d.frequencies(), 1.0, 0.5);
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const PureState psi = haar_random_state(3, rng);
    CHECK(entropy_production(psi, d, c).total == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("|1,-1> at gamma/D = 1 sits at zero entropy production") {
  const Spin1Setup s = spin1_setup(1.0);
  Vector v = Vector::Zero(3);
  v(2) = 1.0;
  const double total =
      entropy_production(PureState{v}, s.decomp, s.coeffs, GammaTermConvention::Rescaled).total;
  CHECK(total == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("gamma-term conventions differ by one power of the block frequency") {
  const double omega = 2.0;
  const SpinModel spin = spin_generators(1.0, omega);
  const LieModel model = spin.lie_model();
  const AdjointDecomposition d = decompose_model(model);
  BathCoefficients c = BathCoefficients::from_gamma_over_D(d.frequencies(), 1.0, 0.5);
  std::mt19937_64 rng(9);
  const PureState psi = haar_random_state(3, rng);
  const double printed =
      entropy_production(psi, d, c, GammaTermConvention::AsPrinted).total;
  const double rescaled =
      entropy_production(psi, d, c, GammaTermConvention::Rescaled).total;
  const double linear = rescaled - (variance(psi, spin.jx) + variance(psi, spin.jy));
  CHECK(printed - rescaled == doctest::Approx((omega - 1.0) * linear).epsilon(1e-10));
}

TEST_CASE("high-temperature metric of the spin-1 model is diag(D, D, 0)") {
  const Spin1Setup s = spin1_setup(0.0);
  BathCoefficients c = s.coeffs;
  c.blocks[0].D = 1.7;
  const RealMatrix g = high_T_metric(s.decomp, c);
  RealMatrix expected = RealMatrix::Zero(3, 3);
  expected(0, 0) = expected(1, 1) = 1.7;
  CHECK((g - expected).norm() < 1e-14);
}

TEST_CASE("high-temperature metric of the oscillator model is diag(D, D, 0, 0)") {
  const OscillatorModel osc = oscillator_model(1.0, 12);
  const AdjointDecomposition d = decompose_model(osc.lie_model());
  BathCoefficients c = BathCoefficients::from_gamma_over_D(d.frequencies(), 2.5, 0.0);
  const RealMatrix g = high_T_metric(d, c);
  // Rotated-frame block rows carry ||a~||^2 D; the (1, h0) rows carry zero.
  RealMatrix expected = RealMatrix::Zero(4, 4);
  expected(0, 0) = expected(1, 1) = 2.5;
  CHECK((g - expected).norm() < 1e-12);

  c.blocks[0].D = 0.0;
  CHECK(high_T_metric(d, c).norm() == 0.0);
}

TEST_CASE("metric is PSD and the high-T identity holds") {
  std::mt19937_64 rng(13);
  const Spin1Setup s = spin1_setup(0.0);
  const RealMatrix g = high_T_metric(s.decomp, s.coeffs);
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(g);
  CHECK(es.eigenvalues().minCoeff() >= -1e-12);

  for (int trial = 0; trial < 1000; ++trial) {
    const PureState psi = haar_random_state(3, rng);
    const double direct = entropy_production(psi, s.decomp, s.coeffs).total;
    // sum_jk g_jk [<X~_j X~_k> - <X~_j><X~_k>] via the covariance matrix.
    const RealMatrix c = covariance(psi, s.decomp.rotated_generators);
    const double quadratic = 0.5 * (g.array() * c.array()).sum();
    CHECK(direct == doctest::Approx(quadratic).epsilon(1e-12));
    CHECK(direct >= -1e-12);
  }
}

TEST_CASE("spin-1 functional is invariant under exp(i phi J_z)") {
  const Spin1Setup s = spin1_setup(0.6);
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const PureState psi = haar_random_state(3, rng);
    const double base =
        entropy_production(psi, s.decomp, s.coeffs, GammaTermConvention::Rescaled).total;
    for (double phi : {0.7, 2.9}) {
      Vector rotated = psi.amplitudes;
      rotated(0) *= Complex(std::cos(phi), std::sin(phi));
      rotated(2) *= Complex(std::cos(phi), -std::sin(phi));
      const double value =
          entropy_production(PureState{rotated}, s.decomp, s.coeffs, GammaTermConvention::Rescaled)
              .total;
      CHECK(value == doctest::Approx(base).epsilon(1e-12));
    }
  }
}

TEST_CASE("invariant dispersion") {
  const SpinModel spin = spin_generators(1.0);
  // Spin coherent states minimize it at j.
  for (double theta : {0.0, 0.9, 2.2})
    CHECK(invariant_dispersion(coherent_state(spin, theta, 0.7), spin.generators()) ==
          doctest::Approx(1.0).epsilon(1e-12));
  // The high-T pointer state is not coherent: dispersion 17/16 > 1.
  CHECK(invariant_dispersion(pointer_family_state(0.0), spin.generators()) ==
        doctest::Approx(17.0 / 16.0).epsilon(1e-12));
}

TEST_CASE("divergent D0 with zero-mode coupling is rejected") {
  const SpinModel spin = spin_generators(1.0);
  LieModel model = spin.lie_model();
  model.coupling(2) = 0.5;  // coupling along J_z, the zero-frequency axis
  const AdjointDecomposition d = decompose_model(model);
  BathCoefficients c = BathCoefficients::from_gamma_over_D(d.frequencies(), 1.0, 0.0);
  c.D0 = std::nullopt;
  std::mt19937_64 rng(31);
  const PureState psi = haar_random_state(3, rng);
  CHECK_THROWS_AS(entropy_production(psi, d, c), DivergentD0Error);
  CHECK_THROWS_AS(entropy_functional(d, c), DivergentD0Error);

  // With a finite D0 the zero-mode variance term contributes.
  c.D0 = 2.0;
  const double with_zero_mode = entropy_production(psi, d, c).total;
  const double d0_part = 0.25 * 2.0 * variance(psi, spin.jz);
  BathCoefficients c_same = c;
  LieModel plain = spin.lie_model();
  const AdjointDecomposition d_plain = decompose_model(plain);
  const double base = entropy_production(psi, d_plain, c_same).total;
  CHECK(with_zero_mode == doctest::Approx(base + d0_part).epsilon(1e-12));
}

TEST_CASE("rotation roundoff on decoupled zero modes does not demand D0") {
  // Couple only the rotation block; the rotated coupling picks up ~1e-17
  // residue on the zero-frequency rows, which must not count as a coupling.
  const SpinModel spin = spin_generators(1.0);
  std::vector<Matrix> gens = {spin.jx + 0.3 * spin.jy, 1.4 * spin.jy, spin.jz};
  RealVector a(3);
  a << 1.0, -0.2, 0.0;
  const auto [model, report] = normalize_basis(make_model(gens, a, 3, 2.0));
  const AdjointDecomposition d = decompose_model(model);
  BathCoefficients c = BathCoefficients::from_gamma_over_D(d.frequencies(), 1.0, 0.3);
  c.D0 = std::nullopt;  // divergent, must stay untouched
  std::mt19937_64 rng(71);
  const PureState psi = haar_random_state(3, rng);
  CHECK_NOTHROW(entropy_production(psi, d, c, GammaTermConvention::Rescaled));
  CHECK_NOTHROW(high_T_metric(d, c));
}

TEST_CASE("entropy functional reproduces entropy_production on random states") {
  std::mt19937_64 rng(41);
  for (double x : {0.0, 0.8}) {
    const Spin1Setup s = spin1_setup(x);
    const QuadraticFunctional fn =
        entropy_functional(s.decomp, s.coeffs, GammaTermConvention::Rescaled);
    for (int trial = 0; trial < 25; ++trial) {
      const PureState psi = haar_random_state(3, rng);
      const double via_fn = fn.value(psi);
      const double direct =
          entropy_production(psi, s.decomp, s.coeffs, GammaTermConvention::Rescaled).total;
      CHECK(via_fn == doctest::Approx(direct).epsilon(1e-12));
    }
  }
}
