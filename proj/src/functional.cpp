#include "sieve/functional.hpp"

#include <cmath>

#include "sieve/errors.hpp"

namespace sieve {

namespace {

/// gamma matrix in the canonical frame: per-block [[-shift, -s g W], [s g W, -shift]]
/// with the block orientation s; zero on trivial rows.
RealMatrix gamma_canonical(const AdjointDecomposition& decomp, const BathCoefficients& coeffs) {
  RealMatrix g = RealMatrix::Zero(decomp.dim, decomp.dim);
  for (size_t a = 0; a < decomp.blocks.size(); ++a) {
    const auto& b = decomp.blocks[a];
    const auto& c = coeffs.blocks.at(a);
    const double off = b.orientation * c.gamma * c.omega;
    g(b.row0, b.row0) = -c.shift_sq;
    g(b.row1, b.row1) = -c.shift_sq;
    g(b.row0, b.row1) = -off;
    g(b.row1, b.row0) = off;
  }
  return g;
}

}  // namespace

PureState::PureState(Vector psi) : amplitudes(std::move(psi)) {
  const double norm2 = amplitudes.squaredNorm();
  if (std::abs(norm2 - 1.0) > tol::state_norm)
    throw Error("state is not normalized: |psi|^2 = " + std::to_string(norm2));
}

PureState PureState::normalized(Vector psi) {
  const double n = psi.norm();
  if (n == 0.0) throw Error("cannot normalize the zero vector");
  return PureState(psi / n);
}

double expectation(const PureState& state, const Matrix& op) {
  const Complex v = state.amplitudes.adjoint() * op * state.amplitudes;
  return v.real();
}

double variance(const PureState& state, const Matrix& op) {
  const Vector applied = op * state.amplitudes;
  const double second = applied.squaredNorm();  // <psi|M^2|psi> for Hermitian M
  const double first = expectation(state, op);
  return second - first * first;
}

RealMatrix covariance(const PureState& state, const std::vector<Matrix>& generators) {
  const int n = static_cast<int>(generators.size());
  RealMatrix c(n, n);
  std::vector<Vector> applied;
  applied.reserve(static_cast<size_t>(n));
  std::vector<double> means(static_cast<size_t>(n));
  for (int m = 0; m < n; ++m) {
    applied.push_back(generators[static_cast<size_t>(m)] * state.amplitudes);
    means[static_cast<size_t>(m)] = state.amplitudes.dot(applied.back()).real();
  }
  for (int m = 0; m < n; ++m)
    for (int k = m; k < n; ++k) {
      const Complex cross = applied[static_cast<size_t>(m)].dot(applied[static_cast<size_t>(k)]);
      const double sym = 2.0 * cross.real();
      c(m, k) = sym - 2.0 * means[static_cast<size_t>(m)] * means[static_cast<size_t>(k)];
      c(k, m) = c(m, k);
    }
  return c;
}

namespace {

double block_coupling_sq(const AdjointDecomposition& d, const RotationBlock& b) {
  const double a0 = d.rotated_coupling(b.row0);
  const double a1 = d.rotated_coupling(b.row1);
  return a0 * a0 + a1 * a1;
}

double gamma_coefficient(const BlockCoefficients& c, GammaTermConvention convention) {
  return convention == GammaTermConvention::AsPrinted ? c.omega * c.omega * c.gamma
                                                      : c.omega * c.gamma;
}

/// i <a~ | gamma . ad~_{X~_m} a~> with ad~ built from the structure constants.
double trivial_gamma_term(const AdjointDecomposition& decomp, const RealMatrix& gamma_canon,
                          const StructureConstants& f, int canonical_row) {
  const int n = decomp.dim;
  // ad_{X~_m} = sum_k O_mk ad_{X_k}, [ad_{X_k}]_{jl} = i f_kjl; work with ad/i.
  RealMatrix ad = RealMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double w = decomp.O(canonical_row, k);
    if (w != 0.0) ad += w * f[static_cast<size_t>(k)];
  }
  const RealMatrix ad_canon = decomp.O * ad * decomp.O.transpose();
  // i <a~| gamma . (i ad/i) a~> = - <a~| gamma ad/i a~>
  const RealVector a = decomp.rotated_coupling;
  return -a.dot(gamma_canon * (ad_canon * a));
}

}  // namespace

EntropyReport entropy_production(const PureState& state, const AdjointDecomposition& decomp,
                                 const BathCoefficients& coeffs, GammaTermConvention convention) {
  if (decomp.rotated_generators.empty())
    throw Error("decomposition lacks rotated generators; use decompose_model");
  if (coeffs.blocks.size() != decomp.blocks.size())
    throw Error("coefficient blocks do not match decomposition blocks");

  EntropyReport report;
  const int n = decomp.dim;
  std::vector<double> vars(static_cast<size_t>(n));
  std::vector<double> means(static_cast<size_t>(n));
  for (int m = 0; m < n; ++m) {
    vars[static_cast<size_t>(m)] = variance(state, decomp.rotated_generators[static_cast<size_t>(m)]);
    means[static_cast<size_t>(m)] = expectation(state, decomp.rotated_generators[static_cast<size_t>(m)]);
  }
  const double mean_xn = means[static_cast<size_t>(n - 1)];

  for (size_t a = 0; a < decomp.blocks.size(); ++a) {
    const auto& b = decomp.blocks[a];
    const auto& c = coeffs.blocks[a];
    BlockTerm term;
    term.alpha = static_cast<int>(a);
    term.coupling_sq = block_coupling_sq(decomp, b);
    term.D = c.D;
    term.variance_sum = vars[static_cast<size_t>(b.row0)] + vars[static_cast<size_t>(b.row1)];
    term.linear_term = term.coupling_sq * gamma_coefficient(c, convention) * mean_xn;
    report.per_block.push_back(term);
    report.total += term.coupling_sq * term.D * term.variance_sum + term.linear_term;
  }

  const RealMatrix gamma_canon = gamma_canonical(decomp, coeffs);
  for (int row : decomp.trivial_rows) {
    ZeroModeTerm zm;
    zm.row = row;
    const double am = decomp.zero_mode_coupling(row);
    if (am != 0.0) {
      if (!coeffs.D0)
        throw DivergentD0Error("D0 is divergent but the coupling has a zero-frequency component");
      zm.d0_term = am * am * *coeffs.D0 * vars[static_cast<size_t>(row)];
    }
    if (row != n - 1) {
      // Spare zero-frequency direction: same linear mechanism as the X_N term.
      zm.gamma_term = trivial_gamma_term(decomp, gamma_canon, decomp.structure_constants,
                                         row) * means[static_cast<size_t>(row)];
    }
    report.total += zm.d0_term + zm.gamma_term;
    report.zero_modes.push_back(zm);
  }
  return report;
}

RealMatrix high_T_metric(const AdjointDecomposition& decomp, const BathCoefficients& coeffs) {
  if (coeffs.blocks.size() != decomp.blocks.size())
    throw Error("coefficient blocks do not match decomposition blocks");
  RealMatrix g = RealMatrix::Zero(decomp.dim, decomp.dim);
  for (size_t a = 0; a < decomp.blocks.size(); ++a) {
    const auto& b = decomp.blocks[a];
    const double w = block_coupling_sq(decomp, b) * coeffs.blocks[a].D;
    g(b.row0, b.row0) = w;
    g(b.row1, b.row1) = w;
  }
  for (int row : decomp.trivial_rows) {
    if (row == decomp.dim - 1) continue;  // X_N direction carries 0
    const double am = decomp.zero_mode_coupling(row);
    if (am != 0.0) {
      if (!coeffs.D0) throw DivergentD0Error("D0 divergent with nonzero zero-mode coupling");
      g(row, row) = am * am * *coeffs.D0;
    }
  }
  return g;
}

double invariant_dispersion(const PureState& state, const std::vector<Matrix>& generators) {
  double total = 0.0;
  for (const auto& x : generators) total += variance(state, x);
  return total;
}

double QuadraticFunctional::value(const PureState& state) const {
  double v = 0.0;
  for (const auto& [w, op] : variance_terms) v += w * variance(state, op);
  for (const auto& [c, op] : linear_terms) v += c * expectation(state, op);
  return v;
}

int QuadraticFunctional::dim() const {
  if (!variance_terms.empty()) return static_cast<int>(variance_terms.front().second.rows());
  if (!linear_terms.empty()) return static_cast<int>(linear_terms.front().second.rows());
  return 0;
}

QuadraticFunctional entropy_functional(const AdjointDecomposition& decomp,
                                       const BathCoefficients& coeffs,
                                       GammaTermConvention convention) {
  if (decomp.rotated_generators.empty())
    throw Error("decomposition lacks rotated generators; use decompose_model");
  QuadraticFunctional fn;
  const int n = decomp.dim;
  double xn_coeff = 0.0;
  for (size_t a = 0; a < decomp.blocks.size(); ++a) {
    const auto& b = decomp.blocks[a];
    const auto& c = coeffs.blocks[a];
    const double wsq = block_coupling_sq(decomp, b);
    if (wsq * c.D != 0.0) {
      fn.variance_terms.push_back({wsq * c.D, decomp.rotated_generators[static_cast<size_t>(b.row0)]});
      fn.variance_terms.push_back({wsq * c.D, decomp.rotated_generators[static_cast<size_t>(b.row1)]});
    }
    xn_coeff += wsq * gamma_coefficient(c, convention);
  }
  if (xn_coeff != 0.0)
    fn.linear_terms.push_back({xn_coeff, decomp.rotated_generators[static_cast<size_t>(n - 1)]});

  const RealMatrix gamma_canon = gamma_canonical(decomp, coeffs);
  for (int row : decomp.trivial_rows) {
    const double am = decomp.zero_mode_coupling(row);
    if (am != 0.0) {
      if (!coeffs.D0)
        throw DivergentD0Error("D0 is divergent but the coupling has a zero-frequency component");
      if (*coeffs.D0 != 0.0)
        fn.variance_terms.push_back({am * am * *coeffs.D0,
                                     decomp.rotated_generators[static_cast<size_t>(row)]});
    }
    if (row != n - 1) {
      const double c = trivial_gamma_term(decomp, gamma_canon, decomp.structure_constants, row);
      if (c != 0.0)
        fn.linear_terms.push_back({c, decomp.rotated_generators[static_cast<size_t>(row)]});
    }
  }
  return fn;
}

}  // namespace sieve
