#pragma once

#include <optional>
#include <string>

#include "sieve/algebra.hpp"
#include "sieve/bath.hpp"
#include "sieve/errors.hpp"
#include "sieve/qbm.hpp"
#include "sieve/spin.hpp"

namespace sieve {

struct ModelIoError : Error {
  using Error::Error;
};

/// A loaded model: either a preset (spin:<j>, su2, qbm) or a JSON model file.
struct ModelBundle {
  std::string name;
  LieModel model;
  std::optional<BathSpec> bath;
  bool assume_orthogonal_adjoint = false;
  std::optional<SpinModel> spin;
  std::optional<OscillatorModel> oscillator;

  bool is_spin() const { return spin.has_value(); }
};

struct PresetOptions {
  double omega = 1.0;
  int n_trunc = 40;
};

/// `source` is a preset name ("spin:1", "spin:1/2", "su2", "qbm") or a path to
/// a JSON model file. Throws ModelIoError with a field diagnostic on bad input.
ModelBundle load_model(const std::string& source, const PresetOptions& opts = {});

/// Parse the bath block `{"family":"power","s":...,"lambda":...,
/// "cutoff":{"type":...},"beta":...,"kind":...}`.
BathSpec parse_bath(const std::string& json_text);

/// Serialize a model to the JSON file schema.
std::string model_to_json(const LieModel& model, const std::optional<BathSpec>& bath);

}  // namespace sieve
