#pragma once

#include <vector>

#include "sieve/algebra.hpp"
#include "sieve/types.hpp"

namespace sieve {

/// One 2D rotation block of the free-evolution action. `orientation` is the
/// sign of sin(t*omega) in the upper-right entry of the block rotation; both
/// signs occur in practice because the change of basis is kept special
/// orthogonal.
struct RotationBlock {
  int row0 = 0;  // rows of O spanning the block, row0 < row1
  int row1 = 0;
  double omega = 0.0;
  int orientation = +1;

  RealMatrix rotation(double t) const {
    RealMatrix r(2, 2);
    const double c = std::cos(t * omega), s = std::sin(t * omega) * orientation;
    r << c, s, -s, c;
    return r;
  }
};

/// Canonical form of R(t) = exp(-tF): an SO(N) change of basis O with
/// O e_N = e_N, 2D rotation blocks sorted by descending frequency and
/// zero-frequency directions last (the X_N axis in the final slot).
struct AdjointDecomposition {
  int dim = 0;
  RealMatrix O;
  std::vector<RotationBlock> blocks;
  std::vector<int> trivial_rows;  // canonical-frame rows with zero frequency, axis last
  bool degenerate_frequencies = false;

  // Filled by decompose_model.
  std::vector<Matrix> rotated_generators;
  RealVector rotated_coupling;
  StructureConstants structure_constants;  // of the original basis
  double h0_scale = 1.0;

  std::vector<double> frequencies() const {
    std::vector<double> w;
    w.reserve(blocks.size());
    for (const auto& b : blocks) w.push_back(b.omega);
    return w;
  }

  /// Rotated coupling component on a zero-frequency row, with rotation
  /// roundoff snapped to zero so exactly-decoupled directions stay decoupled.
  double zero_mode_coupling(int row) const {
    const double am = rotated_coupling(row);
    const double scale = rotated_coupling.norm();
    return std::abs(am) <= 1e-12 * scale ? 0.0 : am;
  }
};

/// Slice of the structure constants: F_jk = f[index](j, k), the generator of
/// R(t) = exp(-tF). Throws NotAntisymmetricError when the basis is not
/// normalized.
RealMatrix build_ad_matrix(const LieModel& model, int generator_index);

/// Decompose a real antisymmetric F into the canonical block form. The last
/// basis direction must be annihilated by F.
AdjointDecomposition canonical_decomposition(const RealMatrix& f);

/// Full model decomposition: canonical form of h0_scale * ad-slice of the
/// free Hamiltonian, plus rotated generators and coupling.
AdjointDecomposition decompose_model(const LieModel& model);

/// R(t) reconstructed from the blocks.
RealMatrix evaluate_R(const AdjointDecomposition& d, double t);

}  // namespace sieve
