#include "fwave/scalar_fn.hpp"

#include <cmath>

#include "fwave/errors.hpp"

namespace fwave {

double ScalarFn::derivative(double x) const {
  if (deriv) return deriv(x);
  return numeric_derivative(*this, x);
}

ScalarFn make_fn(std::string label, Interval domain,
                 std::function<double(double)> eval,
                 std::function<double(double)> deriv) {
  ScalarFn f;
  f.label = std::move(label);
  f.domain = domain;
  f.eval = std::move(eval);
  f.deriv = std::move(deriv);
  return f;
}

double numeric_derivative(const ScalarFn& f, double x) {
  return numeric_derivative(f, x, 1e-6 * (1.0 + std::abs(x)));
}

double numeric_derivative(const ScalarFn& f, double x, double step) {
  if (!f.domain.contains(x) || !f.domain.contains(x + step) ||
      !f.domain.contains(x - step)) {
    raise(Errc::out_of_domain,
          "central difference of " + f.label + " needs x and x +- step inside the domain",
          x);
  }
  return (f.eval(x + step) - f.eval(x - step)) / (2.0 * step);
}

}  // namespace fwave
