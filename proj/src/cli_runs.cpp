#include "sieve/cli_runs.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sieve/errors.hpp"
#include "sieve/parallel.hpp"

namespace sieve::cli {

namespace {

using nlohmann::json;

json state_to_json(const Vector& psi) {
  json out = json::array();
  for (int i = 0; i < psi.size(); ++i) out.push_back({psi(i).real(), psi(i).imag()});
  return out;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Cell num(double v) { return {format_double(v), false}; }
Cell num(long v) { return {std::to_string(v), false}; }
Cell str(std::string s) { return {std::move(s), true}; }

std::string Table::to_csv() const {
  std::ostringstream out;
  for (size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i].text;
    out << "\n";
  }
  return out.str();
}

std::string Table::to_json() const {
  json arr = json::array();
  for (const auto& row : rows) {
    json obj = json::object();
    for (size_t i = 0; i < row.size() && i < columns.size(); ++i) {
      if (row[i].quoted)
        obj[columns[i]] = row[i].text;
      else
        obj[columns[i]] = json::parse(row[i].text, nullptr, false);
    }
    arr.push_back(obj);
  }
  return arr.dump(2) + "\n";
}

std::string Table::render(const std::string& format) const {
  if (format == "json") return to_json();
  if (format == "csv") return to_csv();
  throw ModelIoError("unknown output format: " + format);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string RunManifest::to_json() const {
  json j;
  j["command"] = command;
  j["input"] = input;
  j["input_hash"] = input_hash;
  j["seed"] = seed;
  j["version"] = kVersion;
  j["timestamp_utc"] = utc_timestamp();
  json cfg = json::object();
  for (const auto& [k, v] : config) cfg[k] = v;
  j["config"] = cfg;
  return j.dump(2) + "\n";
}

RunManifest make_manifest(const std::string& command, const std::string& input_source,
                          std::uint64_t seed, std::map<std::string, std::string> config) {
  RunManifest m;
  m.command = command;
  m.input = input_source;
  std::string bytes = input_source;
  if (std::ifstream in{input_source, std::ios::binary}) {
    std::ostringstream ss;
    ss << in.rdbuf();
    bytes = ss.str();
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  m.input_hash = buf;
  m.seed = seed;
  m.config = std::move(config);
  return m;
}

FunctionalContext make_context(const ModelBundle& bundle, std::optional<double> gamma_over_d,
                               std::optional<double> beta_override) {
  FunctionalContext ctx;
  if (bundle.oscillator) {
    ctx.model = bundle.model;  // constructed normalized; truncated matrices skip validation
  } else {
    ctx.model = normalize_basis(bundle.model, bundle.assume_orthogonal_adjoint).first;
  }
  ctx.decomp = decompose_model(ctx.model);

  std::optional<BathSpec> bath = bundle.bath;
  if (beta_override && bath) bath->beta = *beta_override;
  if (beta_override && !bath && bundle.is_spin()) {
    // Spin presets carry no spectral data; beta fixes gamma/D = tanh(beta Omega / 2).
    gamma_over_d = gamma_over_D_from_beta(*beta_override, bundle.spin->omega);
  }

  const auto freqs = ctx.decomp.frequencies();
  if (gamma_over_d) {
    ctx.coeffs = BathCoefficients::from_gamma_over_D(freqs, 1.0, *gamma_over_d);
    ctx.convention = GammaTermConvention::Rescaled;
    ctx.units = "sbar_over_2D";
  } else if (bath) {
    ctx.coeffs = bath_coefficients(*bath, freqs);
    ctx.convention =
        bundle.is_spin() ? GammaTermConvention::Rescaled : GammaTermConvention::AsPrinted;
    ctx.units = "sbar_over_2";
  } else {
    ctx.coeffs = BathCoefficients::from_gamma_over_D(freqs, 1.0, 0.0);
    ctx.convention = GammaTermConvention::Rescaled;
    ctx.units = "sbar_over_2D";
  }
  return ctx;
}

std::string run_validate(const ModelBundle& bundle) {
  json j;
  const bool truncated = bundle.oscillator.has_value();
  const ValidationReport rep = validate_model(bundle.model, true, !truncated);
  j["hermiticity_defect"] = rep.max_hermiticity_defect;
  j["commutation_residual"] = rep.max_commutation_residual;
  j["jacobi_residual"] = rep.max_jacobi_residual;
  j["index_antisymmetry_defect"] = rep.max_index_antisymmetry_defect;
  j["ok"] = rep.ok;
  const KillingForm kf = killing_form(bundle.model.structure_constants);
  j["killing_signature"] = {kf.n_plus, kf.n_minus, kf.n_zero};
  j["killing_degenerate"] = kf.degenerate();
  j["truncated_representation"] = truncated;
  if (truncated) j["truncation_edge_residual"] = bundle.oscillator->edge_residual;
  return j.dump(2) + "\n";
}

Table run_decompose(const FunctionalContext& ctx) {
  Table t;
  t.columns = {"block", "omega", "row0", "row1", "orientation"};
  long idx = 0;
  for (const auto& b : ctx.decomp.blocks) {
    t.rows.push_back({num(idx++), num(b.omega), num(static_cast<long>(b.row0 + 1)),
                      num(static_cast<long>(b.row1 + 1)), num(static_cast<long>(b.orientation))});
  }
  for (int row : ctx.decomp.trivial_rows)
    t.rows.push_back({str("trivial"), num(0.0), num(static_cast<long>(row + 1)),
                      num(static_cast<long>(row + 1)), num(1L)});
  return t;
}

Table run_coefficients(const FunctionalContext& ctx) {
  Table t;
  t.columns = {"block", "omega", "D", "gamma", "f", "shift_sq"};
  long idx = 0;
  for (const auto& b : ctx.coeffs.blocks)
    t.rows.push_back({num(idx++), num(b.omega), num(b.D), num(b.gamma), num(b.f), num(b.shift_sq)});
  if (ctx.coeffs.D0)
    t.rows.push_back({str("D0"), num(0.0), num(*ctx.coeffs.D0), num(0.0), num(0.0), num(0.0)});
  else
    t.rows.push_back({str("D0"), num(0.0), str("divergent"), num(0.0), num(0.0), num(0.0)});
  return t;
}

std::string run_minimize(const FunctionalContext& ctx, const MinimizeConfig& config) {
  const QuadraticFunctional fn = entropy_functional(ctx.decomp, ctx.coeffs, ctx.convention);
  const SieveResult result = minimize(fn, ctx.model.dim_rep, config);
  json j;
  j["best_value"] = result.best_value;
  j["units"] = ctx.units;
  j["best_state"] = state_to_json(result.best_state.amplitudes);
  j["starts"] = result.starts;
  j["converged_runs"] = result.converged_runs;
  j["histogram"] = result.value_histogram;
  return j.dump(2) + "\n";
}

std::string run_spin1(double gamma_over_d) {
  const Spin1Solution sol = spin1_solve(gamma_over_d);
  const Spin1Observables obs = spin1_observables(sol);
  json j;
  j["gamma_over_D"] = sol.gamma_over_D;
  j["mu0"] = sol.mu0;
  j["r"] = sol.r;
  j["q_abs_sq"] = sol.q_abs_sq;
  j["k"] = std::isfinite(sol.k) ? json(sol.k) : json("inf");
  j["min_value"] = sol.min_value;
  j["state"] = state_to_json(sol.state.amplitudes);
  j["mean_jz"] = obs.mean_jz;
  j["var_jx"] = obs.var_jx;
  j["var_jy"] = obs.var_jy;
  return j.dump(2) + "\n";
}

Table run_spin1_table(double gamma_over_d) {
  const Spin1Solution sol = spin1_solve(gamma_over_d);
  const Spin1Observables obs = spin1_observables(sol);
  Table t;
  t.columns = {"gamma_over_D", "mu0", "r", "q_abs_sq", "min_value", "mean_jz",
               "var_jx", "var_jy", "a1_re", "a1_im", "a0_re", "a0_im", "am1_re", "am1_im"};
  const Vector& psi = sol.state.amplitudes;
  t.rows.push_back({num(sol.gamma_over_D), num(sol.mu0), num(sol.r), num(sol.q_abs_sq),
                    num(sol.min_value), num(obs.mean_jz), num(obs.var_jx), num(obs.var_jy),
                    num(psi(0).real()), num(psi(0).imag()), num(psi(1).real()),
                    num(psi(1).imag()), num(psi(2).real()), num(psi(2).imag())});
  return t;
}

Table run_sweep(int points) {
  if (points < 2) throw OutOfRangeError("sweep needs at least 2 points");
  Table t;
  t.columns = {"gamma_over_D", "mu0", "r", "min_value"};
  for (int i = 0; i < points; ++i) {
    const double x = static_cast<double>(i) / (points - 1);
    const Spin1Solution sol = spin1_solve(x);
    t.rows.push_back({num(x), num(sol.mu0), num(sol.r), num(sol.min_value)});
  }
  return t;
}

Table run_scatter(const ModelBundle& bundle, const FunctionalContext& ctx, int samples,
                  std::uint64_t seed, int threads) {
  const QuadraticFunctional fn = entropy_functional(ctx.decomp, ctx.coeffs, ctx.convention);
  std::vector<double> values(static_cast<size_t>(samples));
  parallel_for(samples, threads, [&](int i) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(i));
    const PureState psi = haar_random_state(ctx.model.dim_rep, rng);
    values[static_cast<size_t>(i)] = fn.value(psi);
  });

  Table t;
  t.columns = {"sample_id", "value"};
  double min_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    t.rows.push_back({num(static_cast<long>(i)), num(values[static_cast<size_t>(i)])});
    min_value = std::min(min_value, values[static_cast<size_t>(i)]);
  }
  if (samples > 0) t.rows.push_back({str("empirical_min"), num(min_value)});
  if (bundle.is_spin()) {
    t.rows.push_back({str("reference_coherent_min"), num(bundle.spin->j / 2.0)});
    if (std::abs(bundle.spin->j - 1.0) < 1e-12)
      t.rows.push_back({str("reference_true_min"), num(7.0 / 16.0)});
  }
  return t;
}

namespace {

PureState parse_initial_state(const ModelBundle& bundle, const FunctionalContext& ctx,
                              const std::string& spec) {
  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    return parts;
  };
  const auto parts = split(spec);
  const std::string head = parts.empty() ? "" : parts[0];
  try {
    if (head == "basis" && parts.size() == 2) {
      const int k = std::stoi(parts[1]);
      if (k < 0 || k >= ctx.model.dim_rep) throw OutOfRangeError("basis index out of range");
      Vector psi = Vector::Zero(ctx.model.dim_rep);
      psi(k) = 1.0;
      return PureState{psi};
    }
    if (head == "pointer") {
      if (!bundle.is_spin() || std::abs(bundle.spin->j - 1.0) > 1e-12)
        throw ModelIoError("pointer state is available for spin:1 only");
      double x = 0.0;
      if (!ctx.coeffs.blocks.empty()) {
        const auto& b = ctx.coeffs.blocks.front();
        x = std::clamp(b.omega * b.gamma / b.D, 0.0, 1.0);
      }
      return spin1_solve(x).state;
    }
    if (head == "coherent" && parts.size() == 3) {
      if (!bundle.is_spin()) throw ModelIoError("coherent states need a spin model");
      return coherent_state(*bundle.spin, std::stod(parts[1]), std::stod(parts[2]));
    }
    if (head == "vacuum" || (head == "fock" && parts.size() == 2)) {
      if (!bundle.oscillator) throw ModelIoError("Fock states need the qbm model");
      return fock_state(*bundle.oscillator, head == "vacuum" ? 0 : std::stoi(parts[1]));
    }
  } catch (const std::invalid_argument&) {
    throw ModelIoError("bad state spec: " + spec);
  }
  throw ModelIoError("unknown state spec: " + spec +
                     " (use basis:k | pointer | coherent:theta:phi | vacuum | fock:n)");
}

}  // namespace

Table run_evolve(const ModelBundle& bundle, const FunctionalContext& ctx,
                 const std::string& state_spec, double t_end, double dt, int stride) {
  const PureState psi = parse_initial_state(bundle, ctx, state_spec);
  const MasterOperator op = make_master_operator(ctx.model, ctx.decomp, ctx.coeffs);
  const Matrix rho0 = psi.amplitudes * psi.amplitudes.adjoint();
  const Trajectory traj = integrate(op, rho0, t_end, dt, stride);
  Table t;
  t.columns = {"t", "linear_entropy", "min_eigenvalue", "negative_flag"};
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const double lam = traj.min_eigenvalues[i];
    t.rows.push_back({num(traj.times[i]), num(traj.entropies[i]), num(lam),
                      num(static_cast<long>(lam < -1e-9 ? 1 : 0))});
  }
  return t;
}

Table run_qbm_family(const OscillatorModel& model, double D) {
  Table t;
  t.columns = {"state", "var_q", "var_p", "value"};
  auto add = [&](const std::string& name, const PureState& psi) {
    const QbmEntropyReport rep = qbm_entropy(model, psi, D);
    t.rows.push_back({str(name), num(rep.var_q), num(rep.var_p), num(rep.value)});
  };
  add("vacuum", fock_state(model, 0));
  add("fock_1", fock_state(model, 1));
  add("fock_2", fock_state(model, 2));
  add("squeezed_0.2", squeezed_vacuum(model, 0.2));
  add("squeezed_0.5", squeezed_vacuum(model, 0.5));
  add("displaced_1", displaced_vacuum(model, Complex(1.0, 0.0)));
  return t;
}

}  // namespace sieve::cli
