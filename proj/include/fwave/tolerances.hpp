#pragma once

namespace fwave::tol {

// Functional-equation residual budgets: closed forms are held to a tight
// bound; constructions routed through numerical inversion get a looser one
// because the inversion error dominates.
inline constexpr double feq_closed = 1e-9;
inline constexpr double feq_numeric = 1e-6;

// Involution round trips |phi(phi(u)) - u|, scaled by (1 + |u|).
inline constexpr double inv = 1e-10;

// Fixed-point residual |phi(x0) - x0|.
inline constexpr double root = 1e-12;

// Internal target for inversions feeding wave profiles and involutions.
// Tighter than `inv` so downstream round trips stay inside their budgets.
inline constexpr double profile_invert = 1e-13;

// Below this, sigma counts as frozen rather than roundoff.
inline constexpr double sigma_floor = 1e-12;

// Symmetry checks (evenness of T and psi, oddness of h) by sampling.
inline constexpr double symmetry = 1e-12;

}  // namespace fwave::tol
