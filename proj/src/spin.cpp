#include "sieve/spin.hpp"

#include <cmath>
#include <limits>

#include "sieve/errors.hpp"
#include "sieve/linalg.hpp"

namespace sieve {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool half_integer(double j) {
  const double twice = 2.0 * j;
  return j >= 0.0 && std::abs(twice - std::lround(twice)) < 1e-9;
}

}  // namespace

SpinModel spin_generators(double j, double omega) {
  if (!half_integer(j)) throw BadSpinError("2j must be a nonnegative integer");
  SpinModel model;
  model.j = j;
  model.omega = omega;
  const int d = model.dim();
  Matrix jp = Matrix::Zero(d, d);  // raising operator, basis ordered m = j .. -j
  for (int row = 0; row + 1 < d; ++row) {
    const double m = j - (row + 1);
    jp(row, row + 1) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  const Matrix jm = jp.adjoint();
  model.jx = 0.5 * (jp + jm);
  model.jy = Complex(0, -0.5) * (jp - jm);
  model.jz = Matrix::Zero(d, d);
  for (int row = 0; row < d; ++row) model.jz(row, row) = j - row;
  return model;
}

LieModel SpinModel::lie_model() const {
  LieModel m;
  m.dim_algebra = 3;
  m.dim_rep = dim();
  m.generators = {jx, jy, jz};
  StructureConstants f(3, RealMatrix::Zero(3, 3));
  f[0](1, 2) = 1.0;
  f[1](2, 0) = 1.0;
  f[2](0, 1) = 1.0;
  f[1](0, 2) = -1.0;
  f[2](1, 0) = -1.0;
  f[0](2, 1) = -1.0;
  m.structure_constants = f;
  m.h0_index = 3;
  m.h0_scale = omega;
  m.coupling = RealVector::Zero(3);
  m.coupling(0) = -1.0;
  validate_model(m);
  return m;
}

PureState coherent_state(const SpinModel& model, double theta, double phi) {
  const Matrix h = std::sin(phi) * model.jx - std::cos(phi) * model.jy;
  const Matrix u = expm_i_hermitian(h, theta);
  Vector lowest = Vector::Zero(model.dim());
  lowest(model.dim() - 1) = 1.0;
  return PureState::normalized(u * lowest);
}

double coherent_entropy(double j, double theta, double gamma_over_D) {
  const double s = std::sin(theta);
  return j * (1.0 - 0.5 * s * s - gamma_over_D * std::cos(theta));
}

double gamma_over_D_from_beta(double beta, double omega) {
  if (std::isinf(beta)) return 1.0;
  return std::tanh(0.5 * beta * omega);
}

namespace {

/// Roots of 2 mu^3 - 3 mu^2 + x^2 = 0 by the trigonometric method.
std::array<double, 3> cubic_roots(double x) {
  const double arg = std::clamp(1.0 - 2.0 * x * x, -1.0, 1.0);
  const double theta = std::acos(arg);
  std::array<double, 3> roots{};
  for (int k = 0; k < 3; ++k)
    roots[static_cast<size_t>(k)] = 0.5 + std::cos((theta - 2.0 * kPi * k) / 3.0);
  return roots;
}

double minimum_value_formula(double mu, double x) {
  const double x2 = x * x;
  return (mu * mu * mu - 3.0 * mu * mu + (4.0 - x2) * mu - x2) / (4.0 * mu);
}

}  // namespace

Spin1Solution spin1_solve(double gamma_over_D) {
  const double x = gamma_over_D;
  if (x < 0.0 || x > 1.0) throw OutOfRangeError("gamma/D must lie in [0, 1]");

  double best_mu = -1.0;
  double best_value = std::numeric_limits<double>::infinity();
  for (double mu : cubic_roots(x)) {
    if (mu <= 1e-9) continue;
    const double r_sq = (mu * mu - x * x) / (4.0 * mu);
    if (r_sq < -1e-12 || r_sq > 1.0 + 1e-12) continue;
    const double value = minimum_value_formula(mu, x);
    if (value < best_value) {
      best_value = value;
      best_mu = mu;
    }
  }
  if (best_mu < 0.0) throw Error("no admissible root of the stationarity cubic");

  Spin1Solution sol{x, best_mu, 0.0, 0.0, 0.0, PureState::normalized(Vector::Ones(3)), 0.0};
  const double mu = best_mu;
  const double r_sq = std::max((mu * mu - x * x) / (4.0 * mu), 0.0);
  sol.r = std::sqrt(r_sq);

  Vector psi(3);
  if (std::abs(x - mu) < 1e-9) {
    // gamma/D = mu: the k' = 1/k chart, all weight on |1,-1>.
    sol.k = std::numeric_limits<double>::infinity();
    sol.q_abs_sq = 0.0;
    psi << 0.0, sol.r, std::sqrt(std::max(1.0 - r_sq, 0.0));
  } else {
    sol.k = (x + mu) / (x - mu);
    const double u_sq =
        0.5 * (x - mu) * (x - mu) / (x * x + mu * mu) * (1.0 - r_sq);
    const double u = std::sqrt(std::max(u_sq, 0.0));
    sol.q_abs_sq = u_sq;
    psi << u, sol.r, -sol.k * u;
  }
  sol.state = PureState::normalized(psi);
  sol.min_value = best_value;
  return sol;
}

Spin1Observables spin1_observables(const Spin1Solution& solution) {
  const Complex q = solution.state.amplitudes(0);
  const double r = solution.state.amplitudes(1).real();
  const Complex s = solution.state.amplitudes(2);
  Spin1Observables obs;
  obs.mean_jz = std::norm(q) - std::norm(s);
  const Complex qps = q + s;
  const Complex qms = q - s;
  obs.var_jx = 0.5 * std::norm(qps) + r * r - 2.0 * r * r * qps.real() * qps.real();
  obs.var_jy = 0.5 * std::norm(qms) + r * r - 2.0 * r * r * qms.imag() * qms.imag();
  return obs;
}

PureState spin1_family_state(const Spin1Solution& solution, double psi) {
  Vector v = solution.state.amplitudes;
  v(0) *= Complex(std::cos(psi), std::sin(psi));
  v(2) *= Complex(std::cos(psi), -std::sin(psi));
  return PureState{v};
}

namespace {

/// Takagi factorization M = W diag(s1, s2) W^T of a complex symmetric 2x2
/// matrix, s1 >= s2 >= 0, W unitary.
void takagi_2x2(const Eigen::Matrix2cd& m, Eigen::Matrix2cd& w, double& s1, double& s2) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(m * m.adjoint());
  s1 = std::sqrt(std::max(es.eigenvalues()(1), 0.0));
  s2 = std::sqrt(std::max(es.eigenvalues()(0), 0.0));

  if (s1 - s2 > 1e-12 * std::max(s1, 1.0)) {
    for (int i = 0; i < 2; ++i) {
      const Eigen::Vector2cd v = es.eigenvectors().col(1 - i);
      const double s = i == 0 ? s1 : s2;
      Eigen::Vector2cd mv = m * v.conjugate();
      Complex phase(1.0, 0.0);
      if (s > 1e-14) {
        const Complex ratio = (v.adjoint() * mv)(0) / s;  // e^{i gamma}
        phase = std::sqrt(ratio);
      }
      w.col(i) = phase * v;
    }
    return;
  }
  // Degenerate singular values: m/s is symmetric unitary, so its real and
  // imaginary parts are commuting real symmetric matrices with a shared
  // orthogonal eigenbasis.
  if (s1 < 1e-14) {
    w.setIdentity();
    return;
  }
  const Eigen::Matrix2cd u = m / s1;
  Eigen::Matrix2d o = Eigen::Matrix2d::Identity();
  for (double mix : {std::sqrt(2.0), std::sqrt(3.0), 0.0}) {
    const Eigen::Matrix2d z = u.real() + mix * u.imag();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> ez(z);
    o = ez.eigenvectors();
    if (ez.eigenvalues()(1) - ez.eigenvalues()(0) > 1e-10) break;
    // Z proportional to the identity for every mix means u itself is z * I.
  }
  for (int i = 0; i < 2; ++i) {
    const Eigen::Vector2d col = o.col(i);
    const Complex diag = col.transpose().cast<Complex>() * u * col.cast<Complex>();
    w.col(i) = std::sqrt(diag) * col.cast<Complex>();
  }
}

/// Angles of the spin-1 coherent state whose symmetric-square amplitudes are
/// (a^2, sqrt(2) a b, b^2) for the spinor (a, b).
std::pair<double, double> spinor_angles(const Eigen::Vector2cd& u) {
  const double theta = 2.0 * std::atan2(std::abs(u(0)), std::abs(u(1)));
  double phi = 0.0;
  if (std::abs(u(0)) > 1e-15 && std::abs(u(1)) > 1e-15)
    phi = std::remainder(kPi - std::arg(u(0) * std::conj(u(1))), 2.0 * kPi);
  return {theta, phi};
}

}  // namespace

CoherentOverlapReport coherent_overlap_analysis(const SpinModel& model, const PureState& state) {
  if (state.dim() != model.dim()) throw Error("state dimension does not match the spin model");
  if (std::abs(model.j - 1.0) > 1e-12)
    throw Error("coherent overlap analysis is implemented for spin 1");

  // A spin-1 state is a symmetric 2x2 spinor matrix; its Takagi factorization
  // is exactly the expansion into two orthogonal coherent states.
  const Vector& psi = state.amplitudes;
  Eigen::Matrix2cd m;
  m << std::conj(psi(0)), std::conj(psi(1)) / std::sqrt(2.0), std::conj(psi(1)) / std::sqrt(2.0),
      std::conj(psi(2));

  Eigen::Matrix2cd w;
  double s1 = 0.0, s2 = 0.0;
  takagi_2x2(m, w, s1, s2);

  CoherentOverlapReport report;
  report.max_overlap = s1 * s1;
  auto& dec = report.decomposition;
  Vector reconstruction = Vector::Zero(3);
  for (int i = 0; i < 2; ++i) {
    const Eigen::Vector2cd spinor = w.col(i).conjugate();
    const auto [theta, phi] = spinor_angles(spinor);
    dec.theta[static_cast<size_t>(i)] = theta;
    dec.phi[static_cast<size_t>(i)] = phi;
    const PureState n = coherent_state(model, theta, phi);
    dec.coefficient[static_cast<size_t>(i)] = n.amplitudes.dot(state.amplitudes);
    reconstruction += dec.coefficient[static_cast<size_t>(i)] * n.amplitudes;
  }
  dec.residual = (state.amplitudes - reconstruction).norm();
  report.theta = dec.theta[0];
  report.phi = dec.phi[0];
  return report;
}

}  // namespace sieve
