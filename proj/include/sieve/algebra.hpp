#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sieve/types.hpp"

namespace sieve {

/// Hermitian generators X_1..X_N of a real Lie algebra together with the
/// structure constants of [X_i, X_j] = i sum_k f_ijk X_k, the free-Hamiltonian
/// index (H0 = h0_scale * X_{h0_index}) and the coupling vector of A = sum_j a_j X_j.
struct LieModel {
  int dim_algebra = 0;  // N
  int dim_rep = 0;      // d
  std::vector<Matrix> generators;
  StructureConstants structure_constants;
  int h0_index = 0;       // 1-based, N by convention
  double h0_scale = 1.0;  // H0 = h0_scale * X_{h0_index}
  RealVector coupling;

  const Matrix& h0_generator() const { return generators.at(static_cast<size_t>(h0_index - 1)); }
  Matrix hamiltonian() const { return h0_scale * h0_generator(); }
  Matrix coupling_operator() const;
};

struct KillingForm {
  RealMatrix h;
  int n_plus = 0;
  int n_minus = 0;
  int n_zero = 0;

  bool degenerate() const { return n_zero > 0; }
  /// +1 / -1 when |h| is definite, 0 otherwise.
  int definite_sign() const;
};

struct ValidationReport {
  double max_hermiticity_defect = 0.0;
  double max_commutation_residual = 0.0;
  double max_jacobi_residual = 0.0;
  double max_index_antisymmetry_defect = 0.0;
  bool ok = false;
};

struct ScaleReport {
  int metric_sign = 0;          // sign of h on the definite path, 0 when asserted orthogonal
  double target_norm = 0.0;     // |h'_jj| after normalization
  RealMatrix change_of_basis;   // X'_i = sum_k S_ik X_k
  double h0_axis_scale = 1.0;   // X'_N = h0_axis_scale * X_N
  double max_offdiagonal = 0.0; // residual |h' - c I| after normalization
  bool identity = false;        // no change was required
};

/// Least-squares projection of every commutator [X_i, X_j] onto the generator
/// basis in the Hilbert-Schmidt inner product.
StructureConstants infer_structure_constants(const std::vector<Matrix>& generators,
                                             double* residual_out = nullptr);

/// h_jk from the adjoint representation built out of the structure constants.
/// Negative-definite for compact semi-simple algebras in this convention
/// (su(2) with f = epsilon gives -2 I).
KillingForm killing_form(const StructureConstants& f);

/// Validate hermiticity, closure, index antisymmetry and the Jacobi identity.
/// Throws on violation unless `report_only`. Matrix closure is skipped for
/// truncated representations (`check_closure = false`), where it only holds
/// away from the truncation edge.
ValidationReport validate_model(const LieModel& model, bool report_only = false,
                                bool check_closure = true);

/// Rescale/rotate the generator basis so the Killing form becomes c*I
/// (|c| = 2, the su(2) epsilon normalization) and the adjoint action of X_N is
/// real antisymmetric. The X_N direction is preserved and h0_scale/coupling are
/// transformed so that H0 and A are unchanged as operators.
///
/// When |h| is degenerate the caller may pass assume_orthogonal_adjoint to
/// accept the basis as-is; ad_{X_N} antisymmetry is still verified.
std::pair<LieModel, ScaleReport> normalize_basis(const LieModel& model,
                                                 bool assume_orthogonal_adjoint = false);

/// Convenience: model from generators with inferred structure constants.
LieModel make_model(std::vector<Matrix> generators, RealVector coupling,
                    int h0_index = -1, double h0_scale = 1.0);

}  // namespace sieve
