#include "sieve/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sieve {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ModelIoError("model file: field '" + field + "': " + what);
}

const json& require(const json& j, const std::string& key) {
  if (!j.contains(key)) fail(key, "missing");
  return j.at(key);
}

double number_at(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  return j.get<double>();
}

int integer_at(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  return j.get<int>();
}

Matrix parse_matrix(const json& j, int d, const std::string& field) {
  if (!j.is_array() || static_cast<int>(j.size()) != d) fail(field, "expected " + std::to_string(d) + " rows");
  Matrix m(d, d);
  for (int r = 0; r < d; ++r) {
    const json& row = j.at(static_cast<size_t>(r));
    if (!row.is_array() || static_cast<int>(row.size()) != d)
      fail(field + "[" + std::to_string(r) + "]", "expected " + std::to_string(d) + " entries");
    for (int c = 0; c < d; ++c) {
      const json& cell = row.at(static_cast<size_t>(c));
      const std::string cell_field =
          field + "[" + std::to_string(r) + "][" + std::to_string(c) + "]";
      if (!cell.is_array() || cell.size() != 2) fail(cell_field, "expected an [re, im] pair");
      m(r, c) = Complex(number_at(cell.at(0), cell_field), number_at(cell.at(1), cell_field));
    }
  }
  return m;
}

BathSpec parse_bath_json(const json& j) {
  BathSpec bath;
  const std::string family = require(j, "family").get<std::string>();
  if (family != "power") fail("bath.family", "only 'power' is supported");
  bath.spectral.exponent = number_at(require(j, "s"), "bath.s");
  if (bath.spectral.exponent <= 0.0) fail("bath.s", "exponent must be positive");
  bath.spectral.amplitude = number_at(require(j, "lambda"), "bath.lambda");
  const json& cut = require(j, "cutoff");
  const std::string type = require(cut, "type").get<std::string>();
  if (type == "exp")
    bath.spectral.cutoff = CutoffKind::Exponential;
  else if (type == "hard")
    bath.spectral.cutoff = CutoffKind::Hard;
  else if (type == "none")
    bath.spectral.cutoff = CutoffKind::None;
  else
    fail("bath.cutoff.type", "expected exp|hard|none");
  if (bath.spectral.cutoff != CutoffKind::None)
    bath.spectral.cutoff_frequency = number_at(require(cut, "omega_c"), "bath.cutoff.omega_c");
  const json& beta = require(j, "beta");
  if (beta.is_string() && beta.get<std::string>() == "inf")
    bath.beta = std::numeric_limits<double>::infinity();
  else
    bath.beta = number_at(beta, "bath.beta");
  if (!(bath.beta > 0.0)) fail("bath.beta", "must be positive (or \"inf\")");
  const std::string kind = require(j, "kind").get<std::string>();
  if (kind == "oscillator")
    bath.kind = EnvironmentKind::Oscillator;
  else if (kind == "spin")
    bath.kind = EnvironmentKind::Spin;
  else
    fail("bath.kind", "expected oscillator|spin");
  return bath;
}

ModelBundle load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelIoError("cannot open model file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ModelIoError(std::string("model file: ") + e.what());
  }

  ModelBundle bundle;
  bundle.name = path;
  LieModel& m = bundle.model;
  m.dim_algebra = integer_at(require(j, "dim_algebra"), "dim_algebra");
  m.dim_rep = integer_at(require(j, "dim_rep"), "dim_rep");
  if (m.dim_algebra < 1) fail("dim_algebra", "must be positive");
  if (m.dim_rep < 1) fail("dim_rep", "must be positive");

  const json& gens = require(j, "generators");
  if (!gens.is_array() || static_cast<int>(gens.size()) != m.dim_algebra)
    fail("generators", "expected " + std::to_string(m.dim_algebra) + " matrices");
  for (int i = 0; i < m.dim_algebra; ++i)
    m.generators.push_back(
        parse_matrix(gens.at(static_cast<size_t>(i)), m.dim_rep, "generators[" + std::to_string(i) + "]"));

  if (j.contains("structure_constants")) {
    const json& f = j.at("structure_constants");
    if (!f.is_array() || static_cast<int>(f.size()) != m.dim_algebra)
      fail("structure_constants", "expected a 3-index array");
    for (int i = 0; i < m.dim_algebra; ++i) {
      RealMatrix slice(m.dim_algebra, m.dim_algebra);
      const json& fi = f.at(static_cast<size_t>(i));
      if (!fi.is_array() || static_cast<int>(fi.size()) != m.dim_algebra)
        fail("structure_constants[" + std::to_string(i) + "]", "wrong shape");
      for (int a = 0; a < m.dim_algebra; ++a) {
        const json& row = fi.at(static_cast<size_t>(a));
        if (!row.is_array() || static_cast<int>(row.size()) != m.dim_algebra)
          fail("structure_constants[" + std::to_string(i) + "][" + std::to_string(a) + "]",
               "wrong shape");
        for (int b = 0; b < m.dim_algebra; ++b)
          slice(a, b) = number_at(row.at(static_cast<size_t>(b)),
                                  "structure_constants[" + std::to_string(i) + "]");
      }
      m.structure_constants.push_back(slice);
    }
  } else {
    m.structure_constants = infer_structure_constants(m.generators);
  }

  const json& coupling = require(j, "coupling");
  if (!coupling.is_array() || static_cast<int>(coupling.size()) != m.dim_algebra)
    fail("coupling", "expected " + std::to_string(m.dim_algebra) + " reals");
  m.coupling = RealVector(m.dim_algebra);
  for (int i = 0; i < m.dim_algebra; ++i)
    m.coupling(i) = number_at(coupling.at(static_cast<size_t>(i)), "coupling[" + std::to_string(i) + "]");

  m.h0_index = j.contains("h0_index") ? integer_at(j.at("h0_index"), "h0_index") : m.dim_algebra;
  m.h0_scale = j.contains("h0_scale") ? number_at(j.at("h0_scale"), "h0_scale") : 1.0;
  bundle.assume_orthogonal_adjoint =
      j.contains("assume_orthogonal_adjoint") && j.at("assume_orthogonal_adjoint").get<bool>();
  if (j.contains("bath")) bundle.bath = parse_bath_json(j.at("bath"));

  try {
    validate_model(m);
  } catch (const Error& e) {
    throw ModelIoError(std::string("model file: ") + e.what());
  }
  return bundle;
}

double parse_spin_label(const std::string& label) {
  const auto slash = label.find('/');
  try {
    if (slash != std::string::npos) {
      const double num = std::stod(label.substr(0, slash));
      const double den = std::stod(label.substr(slash + 1));
      return num / den;
    }
    return std::stod(label);
  } catch (const std::exception&) {
    throw ModelIoError("bad spin label: " + label);
  }
}

}  // namespace

ModelBundle load_model(const std::string& source, const PresetOptions& opts) {
  if (source == "qbm") {
    ModelBundle bundle;
    bundle.name = "qbm";
    try {
      bundle.oscillator = oscillator_model(opts.omega, opts.n_trunc);
    } catch (const Error& e) {
      throw ModelIoError(std::string("bad qbm preset: ") + e.what());
    }
    bundle.model = bundle.oscillator->lie_model();
    bundle.assume_orthogonal_adjoint = true;
    return bundle;
  }
  if (source == "su2" || source.rfind("spin:", 0) == 0) {
    const double j = source == "su2" ? 0.5 : parse_spin_label(source.substr(5));
    ModelBundle bundle;
    bundle.name = source;
    try {
      bundle.spin = spin_generators(j, opts.omega);
    } catch (const BadSpinError& e) {
      throw ModelIoError(std::string("bad spin preset: ") + e.what());
    }
    bundle.model = bundle.spin->lie_model();
    return bundle;
  }
  return load_model_file(source);
}

BathSpec parse_bath(const std::string& json_text) {
  try {
    return parse_bath_json(nlohmann::json::parse(json_text));
  } catch (const nlohmann::json::parse_error& e) {
    throw ModelIoError(std::string("bath block: ") + e.what());
  }
}

std::string model_to_json(const LieModel& model, const std::optional<BathSpec>& bath) {
  json j;
  j["dim_algebra"] = model.dim_algebra;
  j["dim_rep"] = model.dim_rep;
  json gens = json::array();
  for (const auto& g : model.generators) {
    json rows = json::array();
    for (int r = 0; r < model.dim_rep; ++r) {
      json row = json::array();
      for (int c = 0; c < model.dim_rep; ++c)
        row.push_back({g(r, c).real(), g(r, c).imag()});
      rows.push_back(row);
    }
    gens.push_back(rows);
  }
  j["generators"] = gens;
  json coupling = json::array();
  for (int i = 0; i < model.dim_algebra; ++i) coupling.push_back(model.coupling(i));
  j["coupling"] = coupling;
  j["h0_index"] = model.h0_index;
  j["h0_scale"] = model.h0_scale;
  if (bath) {
    json b;
    b["family"] = "power";
    b["s"] = bath->spectral.exponent;
    b["lambda"] = bath->spectral.amplitude;
    json cut;
    switch (bath->spectral.cutoff) {
      case CutoffKind::Exponential: cut["type"] = "exp"; break;
      case CutoffKind::Hard: cut["type"] = "hard"; break;
      case CutoffKind::None: cut["type"] = "none"; break;
    }
    if (bath->spectral.cutoff != CutoffKind::None) cut["omega_c"] = bath->spectral.cutoff_frequency;
    b["cutoff"] = cut;
    if (std::isinf(bath->beta))
      b["beta"] = "inf";
    else
      b["beta"] = bath->beta;
    b["kind"] = bath->kind == EnvironmentKind::Spin ? "spin" : "oscillator";
    j["bath"] = b;
  }
  return j.dump(2);
}

}  // namespace sieve
