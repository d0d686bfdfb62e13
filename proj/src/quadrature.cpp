#include "sieve/quadrature.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace sieve::quad {

namespace {

// Kronrod-15 nodes/weights on [-1, 1]; odd-indexed nodes are the Gauss-7 set.
constexpr std::array<double, 15> kNodes = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
    -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
constexpr std::array<double, 15> kKronrodW = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr std::array<double, 7> kGaussW = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
    0.381830050505119, 0.279705391489277, 0.129484966168870};

struct PanelResult {
  double value;
  double error;
};

PanelResult panel(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = 0.0, gauss = 0.0;
  for (int i = 0; i < 15; ++i) {
    const double y = f(mid + half * kNodes[static_cast<size_t>(i)]);
    kronrod += kKronrodW[static_cast<size_t>(i)] * y;
    if (i % 2 == 1) gauss += kGaussW[static_cast<size_t>(i / 2)] * y;
  }
  kronrod *= half;
  gauss *= half;
  return {kronrod, std::abs(kronrod - gauss)};
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol,
             const Options& opts, int depth) {
  const PanelResult r = panel(f, a, b);
  if (r.error <= tol || depth >= opts.max_depth) return r.value;
  const double mid = 0.5 * (a + b);
  return adapt(f, a, mid, 0.5 * tol, opts, depth + 1) +
         adapt(f, mid, b, 0.5 * tol, opts, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opts) {
  if (a == b) return 0.0;
  const PanelResult first = panel(f, a, b);
  const double tol = std::max(opts.abs_tol, opts.rel_tol * std::abs(first.value));
  if (first.error <= tol) return first.value;
  return adapt(f, a, b, tol, opts, 0);
}

double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             const Options& opts) {
  auto mapped = [&](double s) {
    const double den = 1.0 - s;
    const double w = a + s / den;
    return f(w) / (den * den);
  };
  return integrate(mapped, 0.0, 1.0, opts);
}

}  // namespace sieve::quad
