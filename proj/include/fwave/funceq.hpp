#pragma once

#include <string>
#include <vector>

#include "fwave/report.hpp"
#include "fwave/scalar_fn.hpp"
#include "fwave/tolerances.hpp"

namespace fwave {

// Construction, transformation and verification of solutions F of
//
//     F(x + F(x)) = -F(x)
//
// and of the associated involutions phi(x) = x + F(x). The involution's
// graph is symmetric across the diagonal; each solution decomposes its
// domain into pairs of intervals swapped by phi.

/// One (I, J) pair of the domain decomposition: phi maps I onto J and back.
struct IntervalPair {
  Interval I;
  Interval J;
};

/// A candidate solution together with its verified domain decomposition.
/// `fixed_points` lists the zero of F on each piece whose union I u J is an
/// interval; `poles` lists glued singular points (excluded from residual
/// grids by a ball of radius 1e-6).
struct SolutionF {
  ScalarFn F;
  std::vector<IntervalPair> pieces;
  std::vector<double> fixed_points;
  std::vector<double> poles;
};

/// Rotate the graph of an even profile psi on [-a, a] (|psi'| < 1) a quarter
/// turn to obtain an involution on [-a + psi(a), a + psi(a)]:
///
///     phi(u) = u - 2 * x(u),   x(u) the inverse of x -> x + psi(x).
///
/// Preconditions are checked by sampling: |psi(x) - psi(-x)| <= 1e-12
/// (raises not_even with the witness), |psi'| < 1 on interior samples
/// (raises slope_too_large). The returned phi is verified to round-trip:
/// sup |phi(phi(u)) - u| / (1 + |u|) <= 1e-10 over 201 points.
ScalarFn involution_from_even_profile(const ScalarFn& psi, double a);

/// F(x) = phi(x) - x on I u J, for an involution phi carrying I onto J.
/// Checks the mapping by sampling (domain_mismatch), the involution property
/// (not_involution with the worst offender), strict monotonicity on I
/// (non_monotone), and the functional-equation residual of the result.
SolutionF solution_from_involution(const ScalarFn& phi, Interval I, Interval J);

enum class TransformKind { conjugate, shift, reflect };

/// Solution-preserving maps: conjugate a != 0 gives x -> F(a x)/a on A/a,
/// shift gives x -> F(a + x) on A - a, reflect gives x -> -F(-x) on -A.
/// The transformed solution is re-verified before being returned.
SolutionF transform(const SolutionF& s, TransformKind kind, double a = 0.0);

/// Closed-form families with their documented domain decompositions:
///   linear(a)            F(x) = -2(x + a) on R
///   golab_schinzel       F(x) = 1 - 2x
///   piecewise_constant   F(x) = (-1)^k on (k, k+1]
///   hyperbolic(c)        F(x) = -(x + c/x), F(0) = 0
///   quadratic(a, b, c)   F(x) = -2(ax^2 + bx + c)/(2ax + b), F(-b/2a) = 0
/// Raises degenerate_family for quadratic with b^2 - 4ac = 0 or a = b = 0;
/// bad_params when parameters are missing or invalid.
SolutionF builtin_family(const std::string& name,
                         const std::vector<double>& params = {});

/// Residuals r(x) = |F(x + F(x)) + F(x)| over a uniform grid clipped to
/// [-window, window], restricted to points where both x and x + F(x) lie in
/// the domain decomposition and at distance > 1e-6 from every pole.
/// Raises empty_grid when no admissible sample point remains.
ResidualReport residual_functional_eq(const SolutionF& s, int grid_size,
                                      double tolerance = tol::feq_closed,
                                      double window = 10.0);

/// The unique fixed point of a strictly decreasing continuous involution on
/// the interval K, by bisection on phi(x) - x to |phi(x0) - x0| <= 1e-12.
/// Infinite endpoints are clamped to +-1e6. Raises no_sign_change when
/// phi - id has equal signs at both ends.
double find_fixed_point(const ScalarFn& phi, const Interval& K);

}  // namespace fwave
