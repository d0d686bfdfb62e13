#include "sieve/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numeric>

#include "sieve/errors.hpp"

namespace sieve {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Full coefficient matrices in the original basis, assembled from the
/// canonical-frame blocks. D carries D0 on the zero-frequency directions;
/// gamma has no zero-frequency part.
std::pair<RealMatrix, RealMatrix> assemble_coefficient_matrices(
    const AdjointDecomposition& decomp, const BathCoefficients& coeffs) {
  const int n = decomp.dim;
  RealMatrix d_canon = RealMatrix::Zero(n, n);
  RealMatrix g_canon = RealMatrix::Zero(n, n);
  for (size_t a = 0; a < decomp.blocks.size(); ++a) {
    const auto& b = decomp.blocks[a];
    const auto& c = coeffs.blocks.at(a);
    const double sigma = b.orientation;
    d_canon(b.row0, b.row0) = c.D;
    d_canon(b.row1, b.row1) = c.D;
    d_canon(b.row0, b.row1) = sigma * c.f * c.omega;
    d_canon(b.row1, b.row0) = -sigma * c.f * c.omega;
    g_canon(b.row0, b.row0) = -c.shift_sq;
    g_canon(b.row1, b.row1) = -c.shift_sq;
    g_canon(b.row0, b.row1) = -sigma * c.gamma * c.omega;
    g_canon(b.row1, b.row0) = sigma * c.gamma * c.omega;
  }
  for (int row : decomp.trivial_rows) {
    if (!coeffs.D0) {
      if (decomp.zero_mode_coupling(row) != 0.0)
        throw DivergentD0Error("D0 divergent with nonzero zero-frequency coupling");
      continue;
    }
    d_canon(row, row) = *coeffs.D0;
  }
  return {decomp.O.transpose() * d_canon * decomp.O,
          decomp.O.transpose() * g_canon * decomp.O};
}

/// Nearest small rational p/q to `ratio`, or {0,0} when none fits.
std::pair<long, long> small_rational(double ratio, double rel_tol, long max_den) {
  long best_p = 0, best_q = 0;
  for (long q = 1; q <= max_den; ++q) {
    const long p = std::lround(ratio * static_cast<double>(q));
    if (p <= 0) continue;
    if (std::abs(ratio - static_cast<double>(p) / static_cast<double>(q)) <= rel_tol * ratio)
      return {p, q};
  }
  return {best_p, best_q};
}

}  // namespace

Matrix MasterOperator::apply(const Matrix& rho) const {
  const Matrix ham = hamiltonian * rho - rho * hamiltonian;
  const Matrix inner_d = b_diffusion * rho - rho * b_diffusion;
  const Matrix diff = coupling_op * inner_d - inner_d * coupling_op;
  const Matrix inner_g = b_damping * rho + rho * b_damping;
  const Matrix damp = coupling_op * inner_g - inner_g * coupling_op;
  return Complex(0, -1) * ham - diff + Complex(0, 1) * damp;
}

MasterOperator make_master_operator(const LieModel& model, const AdjointDecomposition& decomp,
                                    const BathCoefficients& coeffs) {
  MasterOperator op;
  op.hamiltonian = model.hamiltonian();
  op.coupling_op = model.coupling_operator();
  auto [d_full, g_full] = assemble_coefficient_matrices(decomp, coeffs);
  op.D = d_full;
  op.gamma = g_full;
  const int n = model.dim_algebra;
  op.b_diffusion = Matrix::Zero(model.dim_rep, model.dim_rep);
  op.b_damping = Matrix::Zero(model.dim_rep, model.dim_rep);
  for (int k = 0; k < n; ++k) {
    double wd = 0.0, wg = 0.0;
    for (int j = 0; j < n; ++j) {
      wd += model.coupling(j) * d_full(j, k);
      wg += model.coupling(j) * g_full(j, k);
    }
    op.b_diffusion += wd * model.generators[static_cast<size_t>(k)];
    op.b_damping += wg * model.generators[static_cast<size_t>(k)];
  }
  return op;
}

namespace {

struct RatePieces {
  RealMatrix d_full;
  RealVector a;
  RealMatrix c;
  RealVector w;  // w_m = sum_jkl a_j a_l gamma_jk f_lkm
  RealVector means;
};

RatePieces rate_pieces(const PureState& state, const LieModel& model,
                       const AdjointDecomposition& decomp, const BathCoefficients& coeffs) {
  auto [d_full, g_full] = assemble_coefficient_matrices(decomp, coeffs);
  const int n = model.dim_algebra;
  RatePieces p{d_full, model.coupling, covariance(state, model.generators),
               RealVector::Zero(n), RealVector(n)};
  for (int m = 0; m < n; ++m)
    p.means(m) = expectation(state, model.generators[static_cast<size_t>(m)]);
  const RealVector ag = g_full.transpose() * p.a;
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k) {
      const double weight = p.a(l) * ag(k);
      if (weight != 0.0)
        p.w += weight * model.structure_constants[static_cast<size_t>(l)].row(k).transpose();
    }
  return p;
}

double rate_at(const RatePieces& p, const AdjointDecomposition& decomp, double t) {
  const RealMatrix r = evaluate_R(decomp, t);
  return p.a.dot(p.d_full * r * p.c * r.transpose() * p.a) + p.w.dot(r * p.means);
}

}  // namespace

double instantaneous_rate(const PureState& state, const LieModel& model,
                          const AdjointDecomposition& decomp, const BathCoefficients& coeffs,
                          double t) {
  return rate_at(rate_pieces(state, model, decomp, coeffs), decomp, t);
}

double averaged_rate_oracle(const PureState& state, const LieModel& model,
                            const AdjointDecomposition& decomp, const BathCoefficients& coeffs,
                            double t_avg, int n_samples) {
  const RatePieces pieces = rate_pieces(state, model, decomp, coeffs);

  // Stretch the window to an integer number of periods of every block.
  double t_final = t_avg;
  if (!decomp.blocks.empty()) {
    const double omega_min = decomp.blocks.back().omega;
    const double base = 2.0 * kPi / omega_min;
    long periods = std::max(1L, std::lround(std::ceil(t_avg / base)));
    long lcm = 1;
    for (const auto& b : decomp.blocks) {
      const auto [p, q] = small_rational(b.omega / omega_min, 1e-6, 128);
      if (q > 0) lcm = std::lcm(lcm, q);
    }
    periods = ((periods + lcm - 1) / lcm) * lcm;
    t_final = static_cast<double>(periods) * base;

    const double omega_max = decomp.blocks.front().omega;
    const int nyquist = static_cast<int>(std::ceil(2.5 * omega_max * t_final / (2.0 * kPi))) + 7;
    n_samples = std::max(n_samples, nyquist);
  }

  double sum = 0.0;
  for (int i = 0; i <= n_samples; ++i) {
    const double t = t_final * i / n_samples;
    const double weight = (i == 0 || i == n_samples) ? 0.5 : 1.0;
    sum += weight * rate_at(pieces, decomp, t);
  }
  return sum / n_samples;
}

Trajectory integrate(const MasterOperator& op, const Matrix& rho0, double t_end, double dt,
                     int stride) {
  if (dt <= 0.0 || t_end < 0.0) throw Error("integration window must be positive");
  const long n_steps = std::lround(std::ceil(t_end / dt));

  auto rk4_step = [&](const Matrix& rho, double h) -> Matrix {
    const Matrix k1 = op.apply(rho);
    const Matrix k2 = op.apply(rho + 0.5 * h * k1);
    const Matrix k3 = op.apply(rho + 0.5 * h * k2);
    const Matrix k4 = op.apply(rho + h * k3);
    return rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };

  Trajectory traj;
  auto record = [&](double t, const Matrix& rho) {
    traj.times.push_back(t);
    traj.states.push_back(rho);
    traj.entropies.push_back(linear_entropy(rho));
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + Matrix(rho.adjoint())));
    traj.min_eigenvalues.push_back(es.eigenvalues().minCoeff());
  };

  Matrix rho = rho0;
  record(0.0, rho);
  int violations = 0;
  for (long step = 0; step < n_steps; ++step) {
    const Matrix full = rk4_step(rho, dt);
    const Matrix half = rk4_step(rk4_step(rho, 0.5 * dt), 0.5 * dt);
    const double err = (full - half).norm() / 15.0;
    if (err > 1e-8) {
      if (++violations > 3)
        throw StepTooLargeError("step-doubling error estimate exceeds 1e-8 per step");
    }
    rho = half;
    if ((step + 1) % stride == 0 || step + 1 == n_steps)
      record(dt * static_cast<double>(step + 1), rho);
  }
  return traj;
}

double linear_entropy(const Matrix& rho) {
  return 1.0 - (rho * rho).trace().real();
}

}  // namespace sieve
