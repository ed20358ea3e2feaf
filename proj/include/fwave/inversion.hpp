#pragma once

#include "fwave/scalar_fn.hpp"

namespace fwave {

enum class Direction { increasing, decreasing };

/// A function certified strictly monotone on [lo, hi] by sampling.
/// Build through make_monotone, which probes the ordering.
struct MonotoneFn {
  ScalarFn fn;
  double lo = 0.0;
  double hi = 1.0;
  Direction direction = Direction::increasing;
};

/// Probes `probe_points` samples and raises non_monotone (with the witnessing
/// x) if the values are not strictly ordered.
MonotoneFn make_monotone(ScalarFn fn, double lo, double hi,
                         int probe_points = 33);

struct InvertResult {
  double x = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Solves f(x) = y on the certified interval by bracketing bisection with
/// Newton proposals interleaved (accepted only inside the current bracket,
/// so convergence never depends on the derivative). Terminates when both
/// |f(x) - y| <= tol and the bracket width is <= 2*tol; gives up with a
/// convergence_failure diagnostic after 200 iterations instead of returning
/// a silent best effort.
///
/// Raises out_of_range when y lies outside [f(lo), f(hi)] (order-normalized)
/// and non_monotone when an evaluation contradicts the claimed ordering.
InvertResult invert_at_detailed(const MonotoneFn& m, double y, double tol);
double invert_at(const MonotoneFn& m, double y, double tol);

/// The inverse as a ScalarFn on the value interval of m (order-normalized).
/// Every evaluation runs invert_at. The derivative is 1/f'(x(y)) when f'
/// is available and not slope-degenerate (|f'| >= 1e-8); otherwise it falls
/// back to a central difference of the inverse itself.
ScalarFn build_inverse(const MonotoneFn& m, double tol);

}  // namespace fwave
