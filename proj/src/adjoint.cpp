#include "sieve/adjoint.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "sieve/errors.hpp"

namespace sieve {

namespace {

constexpr double kFreqTolFactor = 1e-9;

Vector canonical_phase(Vector w) {
  int imax = 0;
  w.cwiseAbs().maxCoeff(&imax);
  const Complex z = w(imax);
  if (std::abs(z) > 0.0) w *= std::conj(z) / std::abs(z);
  return w;
}

}  // namespace

RealMatrix build_ad_matrix(const LieModel& model, int generator_index) {
  const RealMatrix& slice = model.structure_constants.at(static_cast<size_t>(generator_index));
  const double defect = (slice + slice.transpose()).norm();
  if (defect > tol::antisymmetry)
    throw NotAntisymmetricError("ad slice is not antisymmetric (basis not normalized), defect " +
                                std::to_string(defect));
  return 0.5 * (slice - slice.transpose());
}

AdjointDecomposition canonical_decomposition(const RealMatrix& f) {
  const int n = static_cast<int>(f.rows());
  if (f.cols() != n) throw Error("ad matrix must be square");
  if ((f + f.transpose()).norm() > tol::antisymmetry * std::max(1.0, f.norm()))
    throw NotAntisymmetricError("matrix is not antisymmetric");

  AdjointDecomposition d;
  d.dim = n;
  const double fnorm = f.norm();
  const double freq_tol = std::max(kFreqTolFactor * fnorm, 1e-300);
  if (f.col(n - 1).norm() > freq_tol)
    throw NotAntisymmetricError("last basis direction is not fixed by the rotation");

  // iF is Hermitian; its orthonormal eigenbasis handles degenerate frequencies.
  Matrix ih = Complex(0, 1) * f.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<Matrix> es(ih);

  struct Pair {
    double omega;
    Vector w;  // eigenvector of F for +i*omega
  };
  std::vector<Pair> pairs;
  std::vector<Vector> kernel_cplx;
  for (int i = 0; i < n; ++i) {
    const double omega = es.eigenvalues()(i);
    if (omega > freq_tol)
      pairs.push_back({omega, canonical_phase(es.eigenvectors().col(i).conjugate())});
    else if (std::abs(omega) <= freq_tol)
      kernel_cplx.push_back(es.eigenvectors().col(i));
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.omega > b.omega; });
  for (size_t i = 0; i + 1 < pairs.size(); ++i)
    if (pairs[i].omega - pairs[i + 1].omega <= freq_tol) d.degenerate_frequencies = true;

  d.O = RealMatrix::Zero(n, n);
  int row = 0;
  for (const auto& p : pairs) {
    const RealVector u = std::sqrt(2.0) * p.w.real();
    const RealVector v = std::sqrt(2.0) * p.w.imag();
    RotationBlock b;
    b.row0 = row;
    b.row1 = row + 1;
    b.omega = p.omega;
    d.O.row(row) = v.transpose();
    d.O.row(row + 1) = u.transpose();
    d.blocks.push_back(b);
    row += 2;
  }

  // Real orthonormal kernel basis with the axis direction pinned to the last row.
  const int n_trivial = n - row;
  std::vector<RealVector> kernel_real;
  {
    RealVector axis = RealVector::Zero(n);
    axis(n - 1) = 1.0;
    kernel_real.push_back(axis);
    for (const auto& z : kernel_cplx) {
      for (const RealVector& cand : {RealVector(z.real()), RealVector(z.imag())}) {
        if (static_cast<int>(kernel_real.size()) == n_trivial) break;
        RealVector w = cand;
        for (const auto& q : kernel_real) w -= q.dot(w) * q;
        for (int brow = 0; brow < row; ++brow) w -= d.O.row(brow).dot(w) * RealVector(d.O.row(brow));
        if (w.norm() > 1e-8) kernel_real.push_back(w.normalized());
      }
    }
    if (static_cast<int>(kernel_real.size()) != n_trivial)
      throw Error("failed to build a real kernel basis");
  }
  for (int i = 1; i < n_trivial; ++i) {
    d.O.row(row) = kernel_real[static_cast<size_t>(i)].transpose();
    d.trivial_rows.push_back(row);
    ++row;
  }
  d.O.row(n - 1) = kernel_real[0].transpose();
  d.trivial_rows.push_back(n - 1);

  // Keep O special orthogonal; prefer flipping a spare trivial direction,
  // otherwise reverse the orientation of the softest block.
  if (d.O.determinant() < 0.0) {
    if (n_trivial > 1) {
      d.O.row(n - 2) *= -1.0;
    } else if (!d.blocks.empty()) {
      auto& b = d.blocks.back();
      const RealVector tmp = d.O.row(b.row0);
      d.O.row(b.row0) = d.O.row(b.row1);
      d.O.row(b.row1) = tmp.transpose();
      b.orientation = -1;
    } else {
      throw Error("cannot orient an empty decomposition");
    }
  }

  const double orth = (d.O * d.O.transpose() - RealMatrix::Identity(n, n)).norm();
  if (orth > tol::orthogonality)
    throw Error("change of basis failed orthogonality check: " + std::to_string(orth));
  return d;
}

AdjointDecomposition decompose_model(const LieModel& model) {
  const RealMatrix f = build_ad_matrix(model, model.h0_index - 1);
  AdjointDecomposition d = canonical_decomposition(model.h0_scale * f);
  d.h0_scale = model.h0_scale;
  d.rotated_generators.assign(static_cast<size_t>(model.dim_algebra),
                              Matrix::Zero(model.dim_rep, model.dim_rep));
  for (int m = 0; m < model.dim_algebra; ++m)
    for (int k = 0; k < model.dim_algebra; ++k)
      if (d.O(m, k) != 0.0)
        d.rotated_generators[static_cast<size_t>(m)] += d.O(m, k) * model.generators[static_cast<size_t>(k)];
  d.rotated_coupling = d.O * model.coupling;
  d.structure_constants = model.structure_constants;
  return d;
}

RealMatrix evaluate_R(const AdjointDecomposition& d, double t) {
  RealMatrix canon = RealMatrix::Identity(d.dim, d.dim);
  for (const auto& b : d.blocks) canon.block<2, 2>(b.row0, b.row0) = b.rotation(t);
  return d.O.transpose() * canon * d.O;
}

}  // namespace sieve
