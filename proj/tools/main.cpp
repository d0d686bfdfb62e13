#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>

#include "sieve/cli_runs.hpp"
#include "sieve/errors.hpp"

namespace {

using namespace sieve;

struct CommonFlags {
  std::string model = "spin:1";
  std::string format = "csv";
  std::string out;
  std::optional<double> gamma_over_d;
  std::optional<double> beta;
  double omega = 1.0;
  int n_trunc = 40;
  std::uint64_t seed = 1;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_model = true, bool with_bath = true) {
  if (with_model)
    cmd->add_option("--model", flags.model, "model preset (spin:<j>, su2, qbm) or JSON file");
  cmd->add_option("--format", flags.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", flags.out, "write output to a file instead of stdout");
  if (with_bath) {
    cmd->add_option("--gamma-over-d",
                    [&flags](const std::vector<std::string>& v) {
                      flags.gamma_over_d = std::stod(v[0]);
                      return true;
                    },
                    "direct gamma/D override (spin convention, values in units of 2D)");
    cmd->add_option("--beta",
                    [&flags](const std::vector<std::string>& v) {
                      flags.beta = std::stod(v[0]);
                      return true;
                    },
                    "inverse temperature override");
  }
  cmd->add_option("--omega", flags.omega, "preset level splitting / oscillator frequency");
  cmd->add_option("--n-trunc", flags.n_trunc, "Fock truncation for the qbm preset");
  cmd->add_option("--seed", flags.seed, "random seed");
  cmd->add_option("--threads", flags.threads, "worker threads (0 = auto)");
}

void emit(const CommonFlags& flags, const std::string& body, const cli::RunManifest& manifest) {
  if (!flags.out.empty()) {
    std::ofstream out(flags.out, std::ios::binary);
    if (!out) throw ModelIoError("cannot write output file: " + flags.out);
    out << body;
    std::ofstream mf(flags.out + ".manifest.json", std::ios::binary);
    mf << manifest.to_json();
  } else {
    std::cout << body;
    std::cerr << manifest.to_json();
  }
}

std::map<std::string, std::string> base_config(const CommonFlags& f) {
  std::map<std::string, std::string> cfg;
  cfg["model"] = f.model;
  cfg["format"] = f.format;
  cfg["omega"] = cli::format_double(f.omega);
  cfg["n_trunc"] = std::to_string(f.n_trunc);
  cfg["threads"] = std::to_string(f.threads);
  if (f.gamma_over_d) cfg["gamma_over_d"] = cli::format_double(*f.gamma_over_d);
  if (f.beta) cfg["beta"] = cli::format_double(*f.beta);
  return cfg;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"pointer-sieve: approximate pointer states for Lie-algebraic open systems"};
  app.require_subcommand(1);

  CommonFlags flags;
  MinimizeConfig mincfg;
  int samples = 10000;
  int points = 101;
  double gamma_arg = 0.0;
  double t_end = 10.0, dt = 1e-3;
  int stride = 10;
  double qbm_d = 1.0;
  std::string state_spec;

  auto* c_validate = app.add_subcommand("validate", "check model invariants");
  add_common(c_validate, flags);

  auto* c_decompose = app.add_subcommand("decompose", "canonical rotation-block decomposition");
  add_common(c_decompose, flags);

  auto* c_coeffs = app.add_subcommand("coeffs", "bath coefficients per block");
  add_common(c_coeffs, flags);

  auto* c_minimize = app.add_subcommand("minimize", "minimize entropy production over pure states");
  add_common(c_minimize, flags);
  c_minimize->add_option("--starts", mincfg.starts, "number of descent starts");
  c_minimize->add_option("--max-iter", mincfg.max_iter, "iteration cap per start");
  c_minimize->add_option("--tol-grad", mincfg.tol_grad, "gradient norm stopping tolerance");

  auto* c_evolve = app.add_subcommand("evolve", "integrate the master equation");
  add_common(c_evolve, flags);
  c_evolve->add_option("--state", state_spec, "initial state (basis:k|pointer|coherent:t:p|vacuum|fock:n)");
  c_evolve->add_option("--t-end", t_end, "integration window");
  c_evolve->add_option("--dt", dt, "step size");
  c_evolve->add_option("--stride", stride, "record every n-th step");

  auto* c_spin1 = app.add_subcommand("spin1", "analytic spin-1 pointer state");
  add_common(c_spin1, flags, false, false);
  c_spin1->add_option("--gamma-over-d", gamma_arg, "gamma/D in [0,1]")->required();

  auto* c_sweep = app.add_subcommand("sweep", "spin-1 minimum across gamma/D in [0,1]");
  add_common(c_sweep, flags, false, false);
  c_sweep->add_option("--points", points, "grid size");

  auto* c_scatter = app.add_subcommand("scatter", "entropy production of random pure states");
  add_common(c_scatter, flags);
  c_scatter->add_option("--samples", samples, "number of Haar samples");

  auto* c_qbm = app.add_subcommand("qbm", "truncated oscillator family comparison");
  add_common(c_qbm, flags);
  c_qbm->add_option("--d-coeff", qbm_d, "diffusion coefficient D");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const PresetOptions preset{flags.omega, flags.n_trunc};
  auto config = base_config(flags);

  if (c_spin1->parsed()) {
    config["gamma_over_d"] = cli::format_double(gamma_arg);
    const std::string body = flags.format == "csv" ? cli::run_spin1_table(gamma_arg).to_csv()
                                                   : cli::run_spin1(gamma_arg);
    emit(flags, body, cli::make_manifest("spin1", "spin:1", flags.seed, config));
    return 0;
  }
  if (c_sweep->parsed()) {
    config["points"] = std::to_string(points);
    const auto table = cli::run_sweep(points);
    emit(flags, table.render(flags.format), cli::make_manifest("sweep", "spin:1", flags.seed, config));
    return 0;
  }

  const ModelBundle bundle = load_model(flags.model, preset);
  if (c_validate->parsed()) {
    emit(flags, cli::run_validate(bundle),
         cli::make_manifest("validate", flags.model, flags.seed, config));
    return 0;
  }

  const cli::FunctionalContext ctx = cli::make_context(bundle, flags.gamma_over_d, flags.beta);
  if (ctx.decomp.degenerate_frequencies)
    std::cerr << "warning: degenerate block frequencies; averaged formulas are approximate\n";

  if (c_decompose->parsed()) {
    std::string body;
    if (flags.format == "json") {
      auto table = cli::run_decompose(ctx);
      std::ostringstream os;
      os << "{\n\"blocks\": " << table.to_json() << ",\n\"O\": [";
      for (int r = 0; r < ctx.decomp.dim; ++r) {
        os << (r ? "," : "") << "[";
        for (int c = 0; c < ctx.decomp.dim; ++c)
          os << (c ? "," : "") << cli::format_double(ctx.decomp.O(r, c));
        os << "]";
      }
      os << "]\n}\n";
      body = os.str();
    } else {
      body = cli::run_decompose(ctx).to_csv();
    }
    emit(flags, body, cli::make_manifest("decompose", flags.model, flags.seed, config));
    return 0;
  }
  if (c_coeffs->parsed()) {
    emit(flags, cli::run_coefficients(ctx).render(flags.format),
         cli::make_manifest("coeffs", flags.model, flags.seed, config));
    return 0;
  }
  if (c_minimize->parsed()) {
    mincfg.seed = flags.seed;
    mincfg.threads = flags.threads;
    config["starts"] = std::to_string(mincfg.starts);
    config["max_iter"] = std::to_string(mincfg.max_iter);
    config["tol_grad"] = cli::format_double(mincfg.tol_grad);
    emit(flags, cli::run_minimize(ctx, mincfg),
         cli::make_manifest("minimize", flags.model, flags.seed, config));
    return 0;
  }
  if (c_scatter->parsed()) {
    config["samples"] = std::to_string(samples);
    emit(flags, cli::run_scatter(bundle, ctx, samples, flags.seed, flags.threads).render(flags.format),
         cli::make_manifest("scatter", flags.model, flags.seed, config));
    return 0;
  }
  if (c_evolve->parsed()) {
    if (state_spec.empty())
      state_spec = bundle.oscillator ? "vacuum"
                   : (bundle.is_spin() && std::abs(bundle.spin->j - 1.0) < 1e-12) ? "pointer"
                                                                                  : "basis:0";
    config["state"] = state_spec;
    config["t_end"] = cli::format_double(t_end);
    config["dt"] = cli::format_double(dt);
    emit(flags, cli::run_evolve(bundle, ctx, state_spec, t_end, dt, stride).render(flags.format),
         cli::make_manifest("evolve", flags.model, flags.seed, config));
    return 0;
  }
  if (c_qbm->parsed()) {
    if (!bundle.oscillator) throw ModelIoError("qbm command needs --model qbm");
    config["d_coeff"] = cli::format_double(qbm_d);
    emit(flags, cli::run_qbm_family(*bundle.oscillator, qbm_d).render(flags.format),
         cli::make_manifest("qbm", flags.model, flags.seed, config));
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const ModelIoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
