#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fwave/freezing.hpp"
#include "fwave/funceq.hpp"

namespace fwave {

/// Reference fields in closed form, against which synthesized fields are
/// compared on unfrozen grid points. `profile_kinks` lists z-values where f
/// has a kink; comparisons and PDE residuals exclude bands of half-width
/// `band_halfwidth` around the characteristic lines through those kinks.
struct ClosedFormFields {
  std::function<double(double, double)> sigma;
  std::function<double(double, double)> mu;
  ScalarFn f;
  std::vector<double> profile_kinks;
  double band_halfwidth = 0.0;
  double oracle_tolerance = 1e-8;
};

struct Fixture {
  std::string name;
  std::string note;
  std::optional<SolutionF> solution;        // equation-side closed form
  std::optional<FreezingProblem> problem;   // present for field fixtures
  ValidationMode mode = ValidationMode::strict;
  ExtensionKind extension = ExtensionKind::linear_c1;
  std::optional<ClosedFormFields> fields;
};

/// Names accepted by fixture(): the closed-form families
/// (linear, golab_schinzel, piecewise_constant, hyperbolic, quadratic)
/// and the three freezing scenarios ex51/ex52/ex53, aliased
/// progressive/simultaneous/mixed after how their fronts move.
const std::vector<std::string>& fixture_names();

/// Raises unknown_fixture for unrecognized names, bad_params for invalid
/// family parameters.
Fixture fixture(const std::string& name, const std::vector<double>& params = {});

/// Synthesizes the fixture's fields and reports the max deviation
/// max(|sigma - sigma_cf|, |mu - mu_cf|) over unfrozen points of an
/// n_x x n_t grid, kink bands excluded. Raises missing_closed_form when the
/// fixture has no reference fields.
ResidualReport oracle_compare(const std::string& name, int n_x, int n_t);

}  // namespace fwave
