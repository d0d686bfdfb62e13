#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sieve/cli_runs.hpp"
#include "sieve/dynamics.hpp"
#include "sieve/errors.hpp"
#include "sieve/model_io.hpp"
#include "sieve/optimizer.hpp"

namespace py = pybind11;
using namespace sieve;

namespace {

py::dict solution_dict(const Spin1Solution& sol) {
  const Spin1Observables obs = spin1_observables(sol);
  py::dict d;
  d["gamma_over_D"] = sol.gamma_over_D;
  d["mu0"] = sol.mu0;
  d["r"] = sol.r;
  d["q_abs_sq"] = sol.q_abs_sq;
  d["k"] = sol.k;
  d["min_value"] = sol.min_value;
  d["state"] = Vector(sol.state.amplitudes);
  d["mean_jz"] = obs.mean_jz;
  d["var_jx"] = obs.var_jx;
  d["var_jy"] = obs.var_jy;
  return d;
}

cli::FunctionalContext context_for(const std::string& source, std::optional<double> gamma_over_d,
                                   std::optional<double> beta, double omega, int n_trunc) {
  const ModelBundle bundle = load_model(source, {omega, n_trunc});
  return cli::make_context(bundle, gamma_over_d, beta);
}

}  // namespace

PYBIND11_MODULE(pointer_sieve, m) {
  m.doc() = "Approximate pointer states for Lie-algebraic open quantum systems";
  m.attr("__version__") = cli::kVersion;

  py::register_exception<Error>(m, "SieveError");

  m.def("spin1_solve", [](double gamma_over_d) { return solution_dict(spin1_solve(gamma_over_d)); },
        py::arg("gamma_over_d"),
        "Analytic spin-1 pointer state and minimum entropy production (units of 2D)");

  m.def(
      "sweep",
      [](int points) {
        py::list out;
        for (int i = 0; i < points; ++i) {
          const double x = static_cast<double>(i) / (points - 1);
          out.append(solution_dict(spin1_solve(x)));
        }
        return out;
      },
      py::arg("points") = 101);

  m.def("coherent_entropy", &coherent_entropy, py::arg("j"), py::arg("theta"),
        py::arg("gamma_over_d"));

  m.def(
      "coherent_state",
      [](double j, double theta, double phi) {
        return Vector(coherent_state(spin_generators(j), theta, phi).amplitudes);
      },
      py::arg("j"), py::arg("theta"), py::arg("phi"));

  m.def(
      "spin_entropy",
      [](const Vector& psi, double j, double gamma_over_d) {
        const SpinModel spin = spin_generators(j);
        const auto ctx = cli::make_context({"spin", spin.lie_model(), {}, false, spin, {}},
                                           gamma_over_d, std::nullopt);
        return entropy_production(PureState::normalized(psi), ctx.decomp, ctx.coeffs,
                                  ctx.convention)
            .total;
      },
      py::arg("state"), py::arg("j") = 1.0, py::arg("gamma_over_d") = 0.0,
      "s-bar/2D of a pure spin state");

  m.def(
      "minimize",
      [](const std::string& model, std::optional<double> gamma_over_d, std::optional<double> beta,
         int starts, std::uint64_t seed, double omega, int n_trunc) {
        const auto ctx = context_for(model, gamma_over_d, beta, omega, n_trunc);
        MinimizeConfig cfg;
        cfg.starts = starts;
        cfg.seed = seed;
        const SieveResult res =
            sieve::minimize(entropy_functional(ctx.decomp, ctx.coeffs, ctx.convention),
                            ctx.model.dim_rep, cfg);
        py::dict d;
        d["best_value"] = res.best_value;
        d["best_state"] = Vector(res.best_state.amplitudes);
        d["units"] = ctx.units;
        d["converged_runs"] = res.converged_runs;
        return d;
      },
      py::arg("model") = "spin:1", py::arg("gamma_over_d") = std::nullopt,
      py::arg("beta") = std::nullopt, py::arg("starts") = 64, py::arg("seed") = 1,
      py::arg("omega") = 1.0, py::arg("n_trunc") = 40);

  m.def(
      "decompose",
      [](const std::string& model, double omega, int n_trunc) {
        const auto ctx = context_for(model, std::nullopt, std::nullopt, omega, n_trunc);
        py::dict d;
        d["O"] = RealMatrix(ctx.decomp.O);
        d["frequencies"] = ctx.decomp.frequencies();
        std::vector<int> trivial;
        for (int r : ctx.decomp.trivial_rows) trivial.push_back(r + 1);
        d["trivial"] = trivial;
        return d;
      },
      py::arg("model"), py::arg("omega") = 1.0, py::arg("n_trunc") = 40);

  m.def(
      "haar_states",
      [](int dim, int n, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        std::vector<Vector> out;
        out.reserve(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) out.push_back(haar_random_state(dim, rng).amplitudes);
        return out;
      },
      py::arg("dim"), py::arg("n"), py::arg("seed") = 1);

  m.def(
      "coherent_overlap",
      [](const Vector& psi, double j) {
        const auto report =
            coherent_overlap_analysis(spin_generators(j), PureState::normalized(psi));
        py::dict d;
        d["max_overlap"] = report.max_overlap;
        d["theta"] = report.theta;
        d["phi"] = report.phi;
        d["residual"] = report.decomposition.residual;
        return d;
      },
      py::arg("state"), py::arg("j") = 1.0);

  m.def(
      "qbm_family",
      [](double omega, int n_trunc, double D) {
        const OscillatorModel model = oscillator_model(omega, n_trunc);
        const auto table = cli::run_qbm_family(model, D);
        py::list rows;
        for (const auto& row : table.rows) {
          py::dict d;
          for (size_t i = 0; i < table.columns.size(); ++i)
            if (row[i].quoted)
              d[table.columns[i].c_str()] = row[i].text;
            else
              d[table.columns[i].c_str()] = std::stod(row[i].text);
          rows.append(d);
        }
        return rows;
      },
      py::arg("omega") = 1.0, py::arg("n_trunc") = 40, py::arg("D") = 1.0);
}
