#pragma once

#include <functional>
#include <string>
#include <utility>

#include "fwave/interval.hpp"

namespace fwave {

/// An evaluable real function of one real variable: the common carrier for
/// solutions, involutions, boundary profiles and wave profiles. Instances
/// built by the library carry a provenance label used in diagnostics. The
/// analytic derivative is optional; derivative() falls back to a central
/// difference when it is absent.
struct ScalarFn {
  std::function<double(double)> eval;
  Interval domain = Interval::whole();
  std::function<double(double)> deriv;  // empty when unavailable
  std::string label = "f";

  double operator()(double x) const { return eval(x); }
  bool has_deriv() const { return static_cast<bool>(deriv); }

  /// Analytic derivative when present, central difference otherwise.
  double derivative(double x) const;
};

ScalarFn make_fn(std::string label, Interval domain,
                 std::function<double(double)> eval,
                 std::function<double(double)> deriv = {});

/// Central-difference derivative with step 1e-6 * (1 + |x|).
/// Raises out_of_domain when x or x +- step leaves the domain.
double numeric_derivative(const ScalarFn& f, double x);
double numeric_derivative(const ScalarFn& f, double x, double step);

}  // namespace fwave
