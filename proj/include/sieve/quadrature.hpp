#pragma once

#include <functional>

namespace sieve::quad {

struct Options {
  double rel_tol = 1e-9;
  double abs_tol = 1e-13;
  int max_depth = 40;
};

/// Adaptive Gauss-Kronrod (G7,K15) panel integration on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opts = {});

/// Semi-infinite tail via the map w = a + s/(1-s), s in [0,1).
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             const Options& opts = {});

}  // namespace sieve::quad
