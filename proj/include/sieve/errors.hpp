#pragma once

#include <stdexcept>
#include <string>

namespace sieve {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Model validation
struct DegenerateBasisError : Error { using Error::Error; };
struct NotClosedError : Error { using Error::Error; };
struct NotHermitianError : Error { using Error::Error; };
struct IndefiniteMetricError : Error { using Error::Error; };
struct NotAntisymmetricError : Error { using Error::Error; };

// Bath / coefficients
struct NoCutoffError : Error { using Error::Error; };
struct DivergentD0Error : Error { using Error::Error; };

// Spin
struct BadSpinError : Error { using Error::Error; };
struct OutOfRangeError : Error { using Error::Error; };

// Optimizer / integrator
struct NoConvergenceError : Error { using Error::Error; };
struct StepTooLargeError : Error { using Error::Error; };

// Truncated Fock space
struct TruncationTooSmallError : Error { using Error::Error; };
struct EdgeOccupationError : Error { using Error::Error; };

}  // namespace sieve
