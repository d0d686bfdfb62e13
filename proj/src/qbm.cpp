#include "sieve/qbm.hpp"

#include <cmath>

#include "sieve/errors.hpp"
#include "sieve/linalg.hpp"

namespace sieve {

OscillatorModel oscillator_model(double omega, int n_trunc) {
  if (n_trunc < 4) throw TruncationTooSmallError("need at least 4 Fock levels");
  if (omega <= 0.0) throw OutOfRangeError("oscillator frequency must be positive");
  OscillatorModel m;
  m.omega = omega;
  m.n_trunc = n_trunc;
  Matrix a = Matrix::Zero(n_trunc, n_trunc);
  for (int k = 0; k + 1 < n_trunc; ++k) a(k, k + 1) = std::sqrt(static_cast<double>(k + 1));
  m.lowering = a;
  const double scale = std::sqrt(omega / 2.0);
  m.q = scale * (a + Matrix(a.adjoint()));
  m.p = scale * Complex(0, 1) * (Matrix(a.adjoint()) - a);
  m.unit = Matrix::Identity(n_trunc, n_trunc);
  m.h0 = 0.5 * (m.q * m.q + m.p * m.p);

  const Matrix comm = m.q * m.p - m.p * m.q - Complex(0, omega) * m.unit;
  m.edge_residual = comm.topLeftCorner(n_trunc - 1, n_trunc - 1).norm();
  return m;
}

LieModel OscillatorModel::lie_model() const {
  LieModel model;
  model.dim_algebra = 4;
  model.dim_rep = n_trunc;
  model.generators = {q, p, unit, h0};
  StructureConstants f(4, RealMatrix::Zero(4, 4));
  // [q, p] = i Omega 1, [h0, q] = -i Omega p, [h0, p] = i Omega q
  f[0](1, 2) = omega;
  f[1](0, 2) = -omega;
  f[3](0, 1) = -omega;
  f[0](3, 1) = omega;
  f[3](1, 0) = omega;
  f[1](3, 0) = -omega;
  model.structure_constants = f;
  model.h0_index = 4;
  model.h0_scale = 1.0;
  model.coupling = RealVector::Zero(4);
  model.coupling(0) = 1.0;
  return model;
}

QbmEntropyReport qbm_entropy(const OscillatorModel& model, const PureState& state, double D,
                             double edge_threshold) {
  if (state.dim() != model.n_trunc) throw Error("state dimension does not match truncation");
  double edge = 0.0;
  for (int k = model.n_trunc - 2; k < model.n_trunc; ++k) edge += std::norm(state.amplitudes(k));
  if (edge > edge_threshold)
    throw EdgeOccupationError("top Fock levels carry weight " + std::to_string(edge));
  QbmEntropyReport report;
  report.var_q = variance(state, model.q);
  report.var_p = variance(state, model.p);
  report.value = 2.0 * D * (report.var_q + report.var_p);
  return report;
}

PureState fock_state(const OscillatorModel& model, int level) {
  if (level < 0 || level >= model.n_trunc) throw OutOfRangeError("Fock level outside truncation");
  Vector psi = Vector::Zero(model.n_trunc);
  psi(level) = 1.0;
  return PureState{psi};
}

PureState displaced_vacuum(const OscillatorModel& model, Complex alpha) {
  const Matrix k = alpha * Matrix(model.lowering.adjoint()) - std::conj(alpha) * model.lowering;
  return PureState::normalized(expm_antihermitian(k) * fock_state(model, 0).amplitudes);
}

PureState squeezed_vacuum(const OscillatorModel& model, double r) {
  const Matrix a2 = model.lowering * model.lowering;
  const Matrix k = 0.5 * r * (a2 - Matrix(a2.adjoint()));
  return PureState::normalized(expm_antihermitian(k) * fock_state(model, 0).amplitudes);
}

}  // namespace sieve
