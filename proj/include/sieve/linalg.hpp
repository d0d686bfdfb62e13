#pragma once

#include "sieve/types.hpp"

namespace sieve {

/// exp(K) for anti-Hermitian K via the spectral decomposition of iK.
Matrix expm_antihermitian(const Matrix& k);

/// exp(i t H) for Hermitian H.
Matrix expm_i_hermitian(const Matrix& h, double t = 1.0);

}  // namespace sieve
