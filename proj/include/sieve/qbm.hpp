#pragma once

#include "sieve/algebra.hpp"
#include "sieve/functional.hpp"
#include "sieve/types.hpp"

namespace sieve {

/// Oscillator group {q, p, 1, h0} on a truncated Fock space, in the rescaled
/// basis with [q, p] = i Omega and h0 = (q^2 + p^2)/2.
struct OscillatorModel {
  double omega = 1.0;
  int n_trunc = 40;
  Matrix q, p, unit, h0;
  Matrix lowering;  // a
  double edge_residual = 0.0;  // commutator defect on the retained levels

  /// Lie model with the exact oscillator-group structure constants and
  /// coupling A = q. Generator matrices are truncated, so full-representation
  /// validation is skipped; closure holds away from the truncation edge.
  LieModel lie_model() const;
};

OscillatorModel oscillator_model(double omega, int n_trunc = 40);

/// High-temperature entropy production 2 D [Var(q) + Var(p)]. Throws
/// EdgeOccupationError when the top Fock levels carry weight above the
/// threshold.
struct QbmEntropyReport {
  double var_q = 0.0;
  double var_p = 0.0;
  double value = 0.0;  // 2 D (var_q + var_p)
};
QbmEntropyReport qbm_entropy(const OscillatorModel& model, const PureState& state, double D,
                             double edge_threshold = 1e-6);

PureState fock_state(const OscillatorModel& model, int level);
PureState displaced_vacuum(const OscillatorModel& model, Complex alpha);
PureState squeezed_vacuum(const OscillatorModel& model, double r);

}  // namespace sieve
