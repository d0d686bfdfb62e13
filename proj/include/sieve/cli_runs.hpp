#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "sieve/dynamics.hpp"
#include "sieve/model_io.hpp"
#include "sieve/optimizer.hpp"

namespace sieve::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Doubles are printed with 17 significant digits so every value round-trips.
std::string format_double(double v);

struct Cell {
  std::string text;
  bool quoted = false;
};
Cell num(double v);
Cell num(long v);
Cell str(std::string s);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::string to_csv() const;
  std::string to_json() const;
  std::string render(const std::string& format) const;  // "csv" | "json"
};

std::uint64_t fnv1a64(std::string_view bytes);

/// Command provenance emitted alongside every output.
struct RunManifest {
  std::string command;
  std::string input;
  std::string input_hash;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> config;

  std::string to_json() const;  // includes tool version and UTC timestamp
};

RunManifest make_manifest(const std::string& command, const std::string& input_source,
                          std::uint64_t seed, std::map<std::string, std::string> config);

/// Resolved evaluation context: decomposition plus bath coefficients, with the
/// gamma-term convention and the reporting units they imply.
struct FunctionalContext {
  LieModel model;  // normalized
  AdjointDecomposition decomp;
  BathCoefficients coeffs;
  GammaTermConvention convention = GammaTermConvention::AsPrinted;
  std::string units;  // "sbar_over_2D" or "sbar_over_2"
};

FunctionalContext make_context(const ModelBundle& bundle, std::optional<double> gamma_over_d,
                               std::optional<double> beta_override);

std::string run_validate(const ModelBundle& bundle);
Table run_decompose(const FunctionalContext& ctx);
Table run_coefficients(const FunctionalContext& ctx);
std::string run_minimize(const FunctionalContext& ctx, const MinimizeConfig& config);
std::string run_spin1(double gamma_over_d);
Table run_spin1_table(double gamma_over_d);
Table run_sweep(int points);
Table run_scatter(const ModelBundle& bundle, const FunctionalContext& ctx, int samples,
                  std::uint64_t seed, int threads);
Table run_evolve(const ModelBundle& bundle, const FunctionalContext& ctx,
                 const std::string& state_spec, double t_end, double dt, int stride);
Table run_qbm_family(const OscillatorModel& model, double D);

}  // namespace sieve::cli
