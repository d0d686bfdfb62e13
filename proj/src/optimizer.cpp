#include "sieve/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "sieve/errors.hpp"
#include "sieve/parallel.hpp"

namespace sieve {

Vector riemannian_gradient(const PureState& state, const QuadraticFunctional& fn) {
  const Vector& psi = state.amplitudes;
  Vector g = Vector::Zero(psi.size());
  for (const auto& [w, op] : fn.variance_terms) {
    const Vector applied = op * psi;
    const double mean = psi.dot(applied).real();
    g += 2.0 * w * (op * applied - 2.0 * mean * applied);
  }
  for (const auto& [c, op] : fn.linear_terms) g += 2.0 * c * (op * psi);
  g -= psi * psi.dot(g);
  return g;
}

namespace {

double lipschitz_estimate(const QuadraticFunctional& fn) {
  double l = 0.0;
  for (const auto& [w, op] : fn.variance_terms) {
    const double nrm = op.norm();  // Frobenius upper-bounds the spectral norm
    l += std::abs(w) * 6.0 * nrm * nrm;
  }
  for (const auto& [c, op] : fn.linear_terms) l += 2.0 * std::abs(c) * op.norm();
  return std::max(l, 1e-12);
}

struct RunOutcome {
  Vector state;
  double value = 0.0;
  bool converged = false;
};

RunOutcome single_run(const QuadraticFunctional& fn, int dim, const MinimizeConfig& cfg,
                      std::uint64_t start_index, double step0) {
  std::mt19937_64 rng(cfg.seed * 0x9e3779b97f4a7c15ULL + start_index);
  PureState psi = haar_random_state(dim, rng);
  double value = fn.value(psi);

  RunOutcome out;
  int plateau = 0;
  Vector prev_psi, prev_grad;
  bool have_prev = false;
  for (int it = 0; it < cfg.max_iter; ++it) {
    const Vector grad = riemannian_gradient(psi, fn);
    const double gnorm = grad.norm();
    if (gnorm <= cfg.tol_grad) {
      out.converged = true;
      break;
    }
    // Barzilai-Borwein trial step adapts to the local curvature, which keeps
    // descent fast in the nearly flat valleys of degenerate minima.
    double step = step0;
    if (have_prev) {
      const Vector s = psi.amplitudes - prev_psi;
      const Vector y = grad - prev_grad;
      const double sy = s.dot(y).real();
      if (sy > 1e-300)
        step = std::clamp(s.squaredNorm() / sy, 1e-3 * step0, 1e12 * step0);
    }
    prev_psi = psi.amplitudes;
    prev_grad = grad;
    have_prev = true;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      Vector trial = psi.amplitudes - step * grad;
      trial /= trial.norm();
      const PureState trial_state{trial};
      const double trial_value = fn.value(trial_state);
      if (trial_value <= value - 1e-4 * step * gnorm * gnorm) {
        // The objective can no longer improve at double precision.
        if (value - trial_value <= 5e-16 * (1.0 + std::abs(value)))
          ++plateau;
        else
          plateau = 0;
        psi = trial_state;
        value = trial_value;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted || plateau >= 8) {
      out.converged = true;  // value-stationary at machine precision
      break;
    }
  }
  out.state = psi.amplitudes;
  out.value = value;
  return out;
}

}  // namespace

SieveResult minimize(const QuadraticFunctional& fn, int dim, const MinimizeConfig& config) {
  if (dim < 1) throw Error("dimension must be positive");
  const double step0 = 1.0 / lipschitz_estimate(fn);

  std::vector<RunOutcome> outcomes(static_cast<size_t>(config.starts));
  parallel_for(config.starts, config.threads, [&](int i) {
    outcomes[static_cast<size_t>(i)] =
        single_run(fn, dim, config, static_cast<std::uint64_t>(i), step0);
  });

  int best = -1;
  SieveResult result{PureState::normalized(Vector::Ones(dim)), 0.0, config.starts, 0, {}};
  for (int i = 0; i < config.starts; ++i) {
    const auto& o = outcomes[static_cast<size_t>(i)];
    if (!o.converged) continue;
    ++result.converged_runs;
    result.value_histogram.push_back(o.value);
    if (best < 0 || o.value < outcomes[static_cast<size_t>(best)].value) best = i;
  }
  if (best < 0) throw NoConvergenceError("no descent run converged");
  result.best_state = canonical_phase_state(PureState{outcomes[static_cast<size_t>(best)].state});
  result.best_value = outcomes[static_cast<size_t>(best)].value;
  return result;
}

double brute_force_min(const QuadraticFunctional& fn, int dim, int grid_resolution) {
  if (dim < 1 || dim > 3) throw Error("brute force oracle supports dim <= 3");
  const int n = std::max(grid_resolution, 2);
  const double pi = 3.14159265358979323846;
  double best = std::numeric_limits<double>::infinity();

  if (dim == 1) {
    Vector psi(1);
    psi << 1.0;
    return fn.value(PureState{psi});
  }
  if (dim == 2) {
    for (int i = 0; i <= n; ++i) {
      const double t = 0.5 * pi * i / n;
      for (int p = 0; p < 2 * n; ++p) {
        const double phi = 2.0 * pi * p / (2 * n);
        Vector psi(2);
        psi << std::cos(t), std::sin(t) * Complex(std::cos(phi), std::sin(phi));
        best = std::min(best, fn.value(PureState::normalized(psi)));
      }
    }
    return best;
  }
  std::vector<double> slice_min(static_cast<size_t>(n + 1),
                                std::numeric_limits<double>::infinity());
  parallel_for(n + 1, 0, [&](int i) {
    const double t1 = 0.5 * pi * i / n;
    double local = std::numeric_limits<double>::infinity();
    Vector psi(3);
    for (int j = 0; j <= n; ++j) {
      const double t2 = 0.5 * pi * j / n;
      const double r0 = std::cos(t1);
      const double r1 = std::sin(t1) * std::cos(t2);
      const double r2 = std::sin(t1) * std::sin(t2);
      for (int p = 0; p < 2 * n; ++p) {
        const double phi1 = 2.0 * pi * p / (2 * n);
        for (int q = 0; q < 2 * n; ++q) {
          const double phi2 = 2.0 * pi * q / (2 * n);
          psi << r0, r1 * Complex(std::cos(phi1), std::sin(phi1)),
              r2 * Complex(std::cos(phi2), std::sin(phi2));
          local = std::min(local, fn.value(PureState{psi}));
        }
      }
    }
    slice_min[static_cast<size_t>(i)] = local;
  });
  for (double v : slice_min) best = std::min(best, v);
  return best;
}

PureState haar_random_state(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector psi(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    psi(i) = Complex(re, im);
  }
  if (dim == 1) psi(0) = 1.0;
  return PureState::normalized(psi);
}

PureState canonical_phase_state(const PureState& state) {
  int imax = 0;
  state.amplitudes.cwiseAbs().maxCoeff(&imax);
  const Complex z = state.amplitudes(imax);
  Vector psi = state.amplitudes;
  if (std::abs(z) > 0.0) psi *= std::conj(z) / std::abs(z);
  return PureState{psi};
}

}  // namespace sieve
