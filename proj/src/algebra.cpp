#include "sieve/algebra.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "sieve/errors.hpp"

namespace sieve {

namespace {

Complex hs_inner(const Matrix& a, const Matrix& b) { return (a.adjoint() * b).trace(); }

}  // namespace

Matrix LieModel::coupling_operator() const {
  Matrix a = Matrix::Zero(dim_rep, dim_rep);
  for (int j = 0; j < dim_algebra; ++j) a += coupling(j) * generators[static_cast<size_t>(j)];
  return a;
}

int KillingForm::definite_sign() const {
  const int n = static_cast<int>(h.rows());
  if (n_plus == n) return +1;
  if (n_minus == n) return -1;
  return 0;
}

StructureConstants infer_structure_constants(const std::vector<Matrix>& generators,
                                             double* residual_out) {
  const int n = static_cast<int>(generators.size());
  if (n == 0) throw DegenerateBasisError("empty generator list");
  const auto d = generators[0].rows();

  RealMatrix gram(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gram(i, j) = hs_inner(generators[static_cast<size_t>(i)], generators[static_cast<size_t>(j)]).real();

  Eigen::SelfAdjointEigenSolver<RealMatrix> es(gram);
  const double lmin = es.eigenvalues().minCoeff();
  const double lmax = es.eigenvalues().maxCoeff();
  if (lmin <= 0.0 || lmax / lmin > 1e12)
    throw DegenerateBasisError("generators are (nearly) linearly dependent: Gram condition number too large");

  Eigen::LDLT<RealMatrix> solver(gram);

  StructureConstants f(static_cast<size_t>(n), RealMatrix::Zero(n, n));
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Matrix comm = generators[static_cast<size_t>(i)] * generators[static_cast<size_t>(j)] -
                          generators[static_cast<size_t>(j)] * generators[static_cast<size_t>(i)];
      // -i [X_i, X_j] is Hermitian, so the projection coefficients are real.
      const Matrix target = Complex(0.0, -1.0) * comm;
      RealVector rhs(n);
      for (int k = 0; k < n; ++k) rhs(k) = hs_inner(generators[static_cast<size_t>(k)], target).real();
      const RealVector c = solver.solve(rhs);

      Matrix reconstruction = Matrix::Zero(d, d);
      for (int k = 0; k < n; ++k) reconstruction += Complex(0.0, c(k)) * generators[static_cast<size_t>(k)];
      worst = std::max(worst, (comm - reconstruction).norm());

      for (int k = 0; k < n; ++k) {
        f[static_cast<size_t>(i)](j, k) = c(k);
        f[static_cast<size_t>(j)](i, k) = -c(k);
      }
    }
  }
  if (residual_out) *residual_out = worst;
  if (worst > tol::commutation)
    throw NotClosedError("commutators leave the generator span (projection residual " +
                         std::to_string(worst) + ")");
  return f;
}

KillingForm killing_form(const StructureConstants& f) {
  const int n = static_cast<int>(f.size());
  KillingForm kf;
  kf.h = RealMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k) {
      double s = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) s += f[static_cast<size_t>(j)](a, b) * f[static_cast<size_t>(k)](b, a);
      kf.h(j, k) = s;
      kf.h(k, j) = s;
    }

  Eigen::SelfAdjointEigenSolver<RealMatrix> es(kf.h);
  const double scale = std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1.0);
  for (int i = 0; i < n; ++i) {
    const double lambda = es.eigenvalues()(i);
    if (lambda > tol::metric_zero * scale)
      ++kf.n_plus;
    else if (lambda < -tol::metric_zero * scale)
      ++kf.n_minus;
    else
      ++kf.n_zero;
  }
  return kf;
}

ValidationReport validate_model(const LieModel& model, bool report_only, bool check_closure) {
  const int n = model.dim_algebra;
  ValidationReport rep;
  if (n <= 0 || model.dim_rep <= 0) throw DegenerateBasisError("dimensions must be positive");
  if (static_cast<int>(model.generators.size()) != n)
    throw DegenerateBasisError("generator count does not match dim_algebra");
  if (static_cast<int>(model.structure_constants.size()) != n)
    throw DegenerateBasisError("structure constant slices do not match dim_algebra");
  if (model.h0_index < 1 || model.h0_index > n) throw DegenerateBasisError("h0_index out of range");
  if (model.coupling.size() != n) throw DegenerateBasisError("coupling vector has wrong length");
  if (model.h0_scale <= 0.0) throw DegenerateBasisError("h0_scale must be positive");

  for (const auto& x : model.generators) {
    if (x.rows() != model.dim_rep || x.cols() != model.dim_rep)
      throw DegenerateBasisError("generator has wrong representation dimension");
    rep.max_hermiticity_defect = std::max(rep.max_hermiticity_defect, (x - Matrix(x.adjoint())).norm());
  }

  const auto& f = model.structure_constants;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        rep.max_index_antisymmetry_defect = std::max(
            rep.max_index_antisymmetry_defect,
            std::abs(f[static_cast<size_t>(i)](j, k) + f[static_cast<size_t>(j)](i, k)));

  if (check_closure)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Matrix lhs = model.generators[static_cast<size_t>(i)] * model.generators[static_cast<size_t>(j)] -
                     model.generators[static_cast<size_t>(j)] * model.generators[static_cast<size_t>(i)];
        for (int k = 0; k < n; ++k)
          lhs -= Complex(0.0, f[static_cast<size_t>(i)](j, k)) * model.generators[static_cast<size_t>(k)];
        rep.max_commutation_residual = std::max(rep.max_commutation_residual, lhs.norm());
      }

  // Jacobi identity, exhaustive over index quadruples.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int m = 0; m < n; ++m)
            s += f[static_cast<size_t>(i)](j, m) * f[static_cast<size_t>(m)](k, l) +
                 f[static_cast<size_t>(j)](k, m) * f[static_cast<size_t>(m)](i, l) +
                 f[static_cast<size_t>(k)](i, m) * f[static_cast<size_t>(m)](j, l);
          rep.max_jacobi_residual = std::max(rep.max_jacobi_residual, std::abs(s));
        }

  rep.ok = rep.max_hermiticity_defect <= tol::hermiticity &&
           rep.max_commutation_residual <= tol::commutation &&
           rep.max_jacobi_residual <= tol::jacobi && rep.max_index_antisymmetry_defect == 0.0;
  if (!report_only) {
    if (rep.max_hermiticity_defect > tol::hermiticity)
      throw NotHermitianError("generator fails hermiticity check");
    if (rep.max_index_antisymmetry_defect != 0.0)
      throw DegenerateBasisError("structure constants not canonically antisymmetric in the first index pair");
    if (rep.max_commutation_residual > tol::commutation)
      throw NotClosedError("structure constants do not reproduce the commutators");
    if (rep.max_jacobi_residual > tol::jacobi) throw NotClosedError("Jacobi identity violated");
  }
  return rep;
}

namespace {

StructureConstants transform_structure_constants(const StructureConstants& f, const RealMatrix& s) {
  const int n = static_cast<int>(f.size());
  const RealMatrix sinv = s.inverse();
  StructureConstants out(static_cast<size_t>(n), RealMatrix::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      RealVector v = RealVector::Zero(n);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double w = s(i, k) * s(j, l);
          if (w != 0.0) v += w * f[static_cast<size_t>(k)].row(l).transpose();
        }
      out[static_cast<size_t>(i)].row(j) = (sinv.transpose() * v).transpose();
    }
  // Canonical storage: exact antisymmetry in the first index pair.
  for (int i = 0; i < n; ++i) {
    out[static_cast<size_t>(i)].row(i).setZero();
    for (int j = i + 1; j < n; ++j)
      out[static_cast<size_t>(j)].row(i) = -out[static_cast<size_t>(i)].row(j);
  }
  return out;
}

double ad_antisymmetry_defect(const StructureConstants& f, int index0) {
  const RealMatrix& slice = f[static_cast<size_t>(index0)];
  return (slice + slice.transpose()).norm();
}

}  // namespace

std::pair<LieModel, ScaleReport> normalize_basis(const LieModel& model,
                                                 bool assume_orthogonal_adjoint) {
  // Shape checks only; full closure validation is a separate concern (and is
  // deliberately skipped for truncated representations).
  if (model.dim_algebra <= 0 || static_cast<int>(model.generators.size()) != model.dim_algebra ||
      static_cast<int>(model.structure_constants.size()) != model.dim_algebra ||
      model.h0_index < 1 || model.h0_index > model.dim_algebra)
    throw DegenerateBasisError("malformed model");
  const int n = model.dim_algebra;
  const int h0 = model.h0_index - 1;
  const KillingForm kf = killing_form(model.structure_constants);
  const int sign = kf.definite_sign();

  ScaleReport report;
  report.change_of_basis = RealMatrix::Identity(n, n);

  if (sign == 0) {
    if (!assume_orthogonal_adjoint)
      throw IndefiniteMetricError(
          "Killing form is not definite up to sign; pass assume_orthogonal_adjoint "
          "to accept the basis as-is");
    const double defect = ad_antisymmetry_defect(model.structure_constants, h0);
    if (defect > tol::antisymmetry)
      throw NotAntisymmetricError("asserted orthogonal adjoint but ad_{X_N} is not antisymmetric");
    report.identity = true;
    report.h0_axis_scale = 1.0;
    return {model, report};
  }

  // Killing norm convention: h' = sign * 2 * I (f = epsilon for su(2)).
  const double target = 2.0;
  const RealMatrix p = sign * kf.h;

  // Last new direction is X_N itself, rescaled to Killing norm `target`.
  RealMatrix s = RealMatrix::Zero(n, n);
  const double t = std::sqrt(target / p(h0, h0));
  s(n - 1, h0) = t;

  // P-orthogonal complement of the X_N axis, whitened to the same norm.
  std::vector<RealVector> complement;
  complement.reserve(static_cast<size_t>(n - 1));
  for (int j = 0; j < n; ++j) {
    if (j == h0) continue;
    RealVector w = RealVector::Zero(n);
    w(j) = 1.0;
    w(h0) -= p(j, h0) / p(h0, h0);
    complement.push_back(w);
  }
  RealMatrix m(n - 1, n - 1);
  for (int a = 0; a < n - 1; ++a)
    for (int b = 0; b < n - 1; ++b)
      m(a, b) = complement[static_cast<size_t>(a)].dot(p * complement[static_cast<size_t>(b)]);
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(m);
  for (int a = 0; a < n - 1; ++a) {
    const double lambda = es.eigenvalues()(a);
    if (lambda <= 0.0) throw IndefiniteMetricError("Killing form lost definiteness in complement");
    RealVector row = RealVector::Zero(n);
    for (int b = 0; b < n - 1; ++b) row += es.eigenvectors()(b, a) * complement[static_cast<size_t>(b)];
    s.row(a) = std::sqrt(target / lambda) * row.transpose();
  }

  LieModel out;
  out.dim_algebra = n;
  out.dim_rep = model.dim_rep;
  out.h0_index = n;
  out.generators.resize(static_cast<size_t>(n), Matrix::Zero(model.dim_rep, model.dim_rep));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (s(i, k) != 0.0) out.generators[static_cast<size_t>(i)] += s(i, k) * model.generators[static_cast<size_t>(k)];
  out.structure_constants = transform_structure_constants(model.structure_constants, s);
  out.coupling = s.transpose().inverse() * model.coupling;
  out.h0_scale = model.h0_scale / t;

  const KillingForm kf2 = killing_form(out.structure_constants);
  report.metric_sign = sign;
  report.target_norm = target;
  report.change_of_basis = s;
  report.h0_axis_scale = t;
  report.max_offdiagonal = (kf2.h - sign * target * RealMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  report.identity = (s - RealMatrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-14;

  const double defect = ad_antisymmetry_defect(out.structure_constants, n - 1);
  if (defect > tol::antisymmetry)
    throw NotAntisymmetricError("normalization failed to make ad_{X_N} antisymmetric");
  return {out, report};
}

LieModel make_model(std::vector<Matrix> generators, RealVector coupling, int h0_index,
                    double h0_scale) {
  LieModel model;
  model.dim_algebra = static_cast<int>(generators.size());
  model.dim_rep = generators.empty() ? 0 : static_cast<int>(generators[0].rows());
  model.generators = std::move(generators);
  model.structure_constants = infer_structure_constants(model.generators);
  model.h0_index = h0_index < 0 ? model.dim_algebra : h0_index;
  model.h0_scale = h0_scale;
  model.coupling = std::move(coupling);
  validate_model(model);
  return model;
}

}  // namespace sieve
