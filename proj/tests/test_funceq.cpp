#include <doctest.h>

#include <cmath>
#include <random>

#include "fwave/funceq.hpp"
#include "fwave/tolerances.hpp"
#include "test_util.hpp"

using namespace fwave;
using fwave::test::error_code_of;

namespace {

ScalarFn flat_profile() {
  return make_fn("psi=0", Interval::closed(-1.0, 1.0),
                 [](double) { return 0.0; }, [](double) { return 0.0; });
}

ScalarFn cap_profile() {  // (x^2 - 1)/2, slopes approach 1 at the endpoints
  return make_fn("psi=(x^2-1)/2", Interval::closed(-1.0, 1.0),
                 [](double x) { return 0.5 * (x * x - 1.0); },
                 [](double x) { return x; });
}

ScalarFn freeze_profile(double& a_out) {  // -(2 - sqrt(x^2 + e^-4))
  const double e4 = std::exp(-4.0);
  a_out = std::sqrt(4.0 - e4);
  return make_fn("psi=-(2-sqrt(x^2+e^-4))",
                 Interval::closed(-a_out, a_out),
                 [e4](double x) { return std::sqrt(x * x + e4) - 2.0; },
                 [e4](double x) { return x / std::sqrt(x * x + e4); });
}

double direct_residual(const SolutionF& s, double x) {
  const double fx = s.F.eval(x);
  return std::abs(s.F.eval(x + fx) + fx);
}

}  // namespace

TEST_CASE("flat profile rotates to the anti-diagonal") {
  const ScalarFn phi = involution_from_even_profile(flat_profile(), 1.0);
  CHECK(phi.domain.lo == doctest::Approx(-1.0));
  CHECK(phi.domain.hi == doctest::Approx(1.0));
  for (double u : linspace(-1.0, 1.0, 21)) {
    CHECK(std::abs(phi.eval(u) + u) <= 1e-12);
  }
}

TEST_CASE("freezing-time profile rotates to the generator involution") {
  double a = 0.0;
  const ScalarFn psi = freeze_profile(a);
  const ScalarFn phi = involution_from_even_profile(psi, a);
  // The fixed point sits at psi(0) = -(2 - e^-2).
  const double u0 = -(2.0 - std::exp(-2.0));
  CHECK(std::abs(phi.eval(u0) - u0) <= 1e-10);
  for (double u : linspace(phi.domain.lo, phi.domain.hi, 201)) {
    CHECK(std::abs(phi.eval(phi.eval(u)) - u) <= 1e-9 * (1.0 + std::abs(u)));
  }
}

TEST_CASE("quadratic cap profile: rotation oracle") {
  const ScalarFn phi = involution_from_even_profile(cap_profile(), 1.0);
  // Independent oracle: the quarter-turn of the graph maps (x, psi(x)) to
  // (x + psi(x), -x + psi(x)), so phi(x + psi(x)) must equal -x + psi(x).
  for (double x : linspace(-1.0, 1.0, 201)) {
    const double psi = 0.5 * (x * x - 1.0);
    CHECK(std::abs(phi.eval(x + psi) - (-x + psi)) <= 1e-10);
  }
  for (double u : linspace(phi.domain.lo, phi.domain.hi, 101)) {
    CHECK(std::abs(phi.eval(phi.eval(u)) - u) <= 1e-10);
  }
}

TEST_CASE("profile precondition failures carry witnesses") {
  const ScalarFn odd = make_fn("x^3", Interval::closed(-1.0, 1.0),
                               [](double x) { return x * x * x; },
                               [](double x) { return 3.0 * x * x; });
  CHECK(error_code_of([&] { involution_from_even_profile(odd, 1.0); }) ==
        Errc::not_even);

  const ScalarFn steep = make_fn("x^2", Interval::closed(-1.0, 1.0),
                                 [](double x) { return x * x; },
                                 [](double x) { return 2.0 * x; });
  CHECK(error_code_of([&] { involution_from_even_profile(steep, 1.0); }) ==
        Errc::slope_too_large);
}

TEST_CASE("random even quartic profiles produce involutions") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double c0 = coef(rng), c2 = coef(rng), c4 = coef(rng);
    // Normalize so |psi'| <= 0.8 on [-1, 1]: |psi'| <= 2|c2| + 4|c4| per unit.
    const double scale = 0.8 / (2.0 * std::abs(c2) + 4.0 * std::abs(c4) + 1e-9);
    auto eval = [=](double x) {
      return scale * (c0 + c2 * x * x + c4 * x * x * x * x);
    };
    auto deriv = [=](double x) {
      return scale * (2.0 * c2 * x + 4.0 * c4 * x * x * x);
    };
    const ScalarFn psi =
        make_fn("quartic", Interval::closed(-1.0, 1.0), eval, deriv);
    const ScalarFn phi = involution_from_even_profile(psi, 1.0);
    for (double u : linspace(phi.domain.lo, phi.domain.hi, 201)) {
      CHECK(std::abs(phi.eval(phi.eval(u)) - u) <= 1e-9 * (1.0 + std::abs(u)));
    }
  }
}

TEST_CASE("solution from the anti-diagonal involution") {
  const ScalarFn phi = make_fn("-x", Interval::whole(),
                               [](double x) { return -x; },
                               [](double) { return -1.0; });
  const SolutionF s = solution_from_involution(phi, Interval::whole(), Interval::whole());
  for (double x : {-3.0, 0.0, 1.5}) {
    CHECK(s.F.eval(x) == doctest::Approx(-2.0 * x));
  }
  REQUIRE(s.fixed_points.size() == 1);
  CHECK(std::abs(s.fixed_points[0]) <= 1e-10);
}

TEST_CASE("identity involution gives the zero solution") {
  const ScalarFn id = make_fn("id", Interval::whole(), [](double x) { return x; });
  const SolutionF s = solution_from_involution(id, Interval::closed(-2.0, 2.0),
                                               Interval::closed(-2.0, 2.0));
  for (double x : linspace(-2.0, 2.0, 11)) {
    CHECK(s.F.eval(x) == 0.0);
    CHECK(direct_residual(s, x) == 0.0);
  }
}

TEST_CASE("negative reciprocal involution") {
  const ScalarFn phi = make_fn("-1/x", Interval::whole(), [](double x) {
    return x == 0.0 ? 0.0 : -1.0 / x;
  });
  const double inf = std::numeric_limits<double>::infinity();
  const SolutionF s =
      solution_from_involution(phi, Interval::open(0.0, inf), Interval::open(-inf, 0.0));
  for (double x : {0.5, 1.0, 2.0, 5.0}) {
    CHECK(s.F.eval(x) == doctest::Approx(-(x + 1.0 / x)).epsilon(1e-15));
    CHECK(direct_residual(s, x) <= 1e-12);
  }
}

TEST_CASE("involution and mapping failures") {
  const ScalarFn cube = make_fn("-x^3", Interval::whole(),
                                [](double x) { return -x * x * x; });
  CHECK(error_code_of([&] {
          solution_from_involution(cube, Interval::closed(-1.0, 1.0),
                                   Interval::closed(-1.0, 1.0));
        }) == Errc::not_involution);

  const ScalarFn neg = make_fn("-x", Interval::whole(), [](double x) { return -x; });
  CHECK(error_code_of([&] {
          solution_from_involution(neg, Interval::closed(0.0, 1.0),
                                   Interval::closed(5.0, 6.0));
        }) == Errc::domain_mismatch);
}

TEST_CASE("conjugation rescales the hyperbolic solution") {
  const SolutionF base = builtin_family("hyperbolic", {1.0});
  const SolutionF conj = transform(base, TransformKind::conjugate, 0.5);
  for (double x : {0.5, 1.0, 2.0, 7.0}) {
    CHECK(conj.F.eval(x) == doctest::Approx(-(x + 4.0 / x)).epsilon(1e-15));
  }
}

TEST_CASE("shift moves the linear solution") {
  const SolutionF base = builtin_family("linear", {0.0});
  const SolutionF shifted = transform(base, TransformKind::shift, 1.0);
  for (double x : {-2.0, 0.0, 3.0}) {
    CHECK(shifted.F.eval(x) == doctest::Approx(-2.0 * (x + 1.0)));
  }
  REQUIRE(shifted.fixed_points.size() == 1);
  CHECK(shifted.fixed_points[0] == doctest::Approx(-1.0));
}

TEST_CASE("reflection and the zero fixed point of transforms") {
  const SolutionF gs = builtin_family("golab_schinzel");
  const SolutionF refl = transform(gs, TransformKind::reflect, 0.0);
  for (double x : {-1.0, 0.25, 2.0}) {
    CHECK(refl.F.eval(x) == doctest::Approx(-(1.0 + 2.0 * x)));
  }

  const ScalarFn id = make_fn("id", Interval::whole(), [](double x) { return x; });
  const SolutionF zero = solution_from_involution(
      id, Interval::closed(-3.0, 3.0), Interval::closed(-3.0, 3.0));
  for (TransformKind k :
       {TransformKind::conjugate, TransformKind::shift, TransformKind::reflect}) {
    const SolutionF t = transform(zero, k, 2.0);
    for (double x : linspace(t.F.domain.lo > -1.5 ? t.F.domain.lo : -1.5, 1.5, 7)) {
      CHECK(t.F.eval(x) == 0.0);
    }
  }

  CHECK(error_code_of([&] { transform(gs, TransformKind::conjugate, 0.0); }) ==
        Errc::zero_scale);
}

TEST_CASE("piecewise-constant family values and residual") {
  const SolutionF s = builtin_family("piecewise_constant");
  CHECK(s.F.eval(0.5) == 1.0);
  CHECK(s.F.eval(1.5) == -1.0);
  CHECK(s.F.eval(1.0) == 1.0);   // (-1)^(k-1) at integer k
  CHECK(s.F.eval(2.0) == -1.0);
  CHECK(s.F.eval(-0.25) == -1.0);
  CHECK(direct_residual(s, 0.5) == 0.0);
  CHECK(s.fixed_points.empty());
}

TEST_CASE("golab-schinzel instance") {
  const SolutionF s = builtin_family("golab_schinzel");
  CHECK(s.F.eval(1.0) == -1.0);
  CHECK(s.F.eval(0.0) == 1.0);
  CHECK(direct_residual(s, 1.0) == 0.0);
}

TEST_CASE("quadratic family matches the hyperbolic one it embeds") {
  const SolutionF q = builtin_family("quadratic", {1.0, 0.0, -1.0});
  const SolutionF h = builtin_family("hyperbolic", {-1.0});
  for (double x : {0.25, 0.5, 2.0, -3.0}) {
    CHECK(q.F.eval(x) == doctest::Approx(h.F.eval(x)).epsilon(1e-14));
  }
  REQUIRE(q.fixed_points.size() == 2);
  CHECK(q.fixed_points[0] == doctest::Approx(1.0));
  CHECK(q.fixed_points[1] == doctest::Approx(-1.0));
}

TEST_CASE("discriminant sign fixes the root structure, not a convention") {
  // Both signs must satisfy the equation; only a positive discriminant has
  // genuine zeros (the roots of the numerator).
  const SolutionF pos = builtin_family("quadratic", {1.0, 0.0, -1.0});
  const SolutionF neg = builtin_family("quadratic", {1.0, 0.0, 1.0});
  CHECK(residual_functional_eq(pos, 1001, 1e-12).pass);
  CHECK(residual_functional_eq(neg, 1001, 1e-12).pass);
  CHECK(pos.fixed_points.size() == 2);
  CHECK(neg.fixed_points.empty());

  const SolutionF affine = builtin_family("quadratic", {0.0, 2.0, 3.0});
  CHECK(affine.F.eval(0.0) == doctest::Approx(-3.0));
  REQUIRE(affine.fixed_points.size() == 1);
  CHECK(affine.fixed_points[0] == doctest::Approx(-1.5));

  CHECK(error_code_of([&] { builtin_family("quadratic", {1.0, 2.0, 1.0}); }) ==
        Errc::degenerate_family);
  CHECK(error_code_of([&] { builtin_family("quadratic", {0.0, 0.0, 1.0}); }) ==
        Errc::degenerate_family);
  CHECK(error_code_of([&] { builtin_family("hyperbolic", {0.0}); }) ==
        Errc::bad_params);
  CHECK(error_code_of([&] { builtin_family("nope"); }) == Errc::bad_params);
}

TEST_CASE("residual grids") {
  const ResidualReport lin = residual_functional_eq(builtin_family("linear", {3.0}), 101);
  CHECK(lin.sup_norm <= 1e-15);
  CHECK(lin.pass);

  // Positive-axis grid for the hyperbolic solution with c = 2.
  const SolutionF hyp = builtin_family("hyperbolic", {2.0});
  double sup = 0.0;
  for (double x : linspace(0.1, 10.0, 101)) {
    sup = std::max(sup, direct_residual(hyp, x));
  }
  CHECK(sup <= 1e-12);

  SolutionF not_solution;
  not_solution.F = make_fn("-x", Interval::whole(), [](double x) { return -x; });
  not_solution.pieces.push_back({Interval::whole(), Interval::whole()});
  const ResidualReport bad = residual_functional_eq(not_solution, 1001, tol::feq_closed);
  CHECK_FALSE(bad.pass);
  CHECK(bad.sup_norm >= 1.0);
  CHECK(std::abs(not_solution.F.eval(1.0 + not_solution.F.eval(1.0)) +
                 not_solution.F.eval(1.0)) == doctest::Approx(1.0));

  SolutionF far;
  far.F = make_fn("far", Interval::closed(50.0, 60.0), [](double) { return 0.0; });
  CHECK(error_code_of([&] { residual_functional_eq(far, 101); }) ==
        Errc::empty_grid);
}

TEST_CASE("fixed points by bisection") {
  const ScalarFn neg = make_fn("-x", Interval::whole(), [](double x) { return -x; });
  CHECK(std::abs(find_fixed_point(neg, Interval::closed(-1.0, 1.0))) <= 1e-12);

  const double a = 2.0;
  const ScalarFn lin = make_fn("-x-2a", Interval::whole(),
                               [a](double x) { return -x - 2.0 * a; });
  CHECK(find_fixed_point(lin, Interval::whole()) == doctest::Approx(-a).epsilon(1e-10));

  CHECK(error_code_of([&] { find_fixed_point(neg, Interval::closed(1.0, 2.0)); }) ==
        Errc::no_sign_change);
}

TEST_CASE("numeric derivative") {
  const ScalarFn lin = make_fn("-2x", Interval::whole(),
                               [](double x) { return -2.0 * x; });
  CHECK(numeric_derivative(lin, 5.0) == doctest::Approx(-2.0).epsilon(1e-10));

  const SolutionF hyp = builtin_family("hyperbolic", {1.0});
  const double d1000 = numeric_derivative(hyp.F, 1000.0);
  CHECK(std::abs(d1000 - (-1.0 + 1e-6)) <= 1e-8);

  // A zero at the origin forces slope -2 there (quadratic with c = 0).
  const SolutionF q = builtin_family("quadratic", {1.0, 1.0, 0.0});
  CHECK(q.F.eval(0.0) == 0.0);
  CHECK(numeric_derivative(q.F, 0.0) == doctest::Approx(-2.0).epsilon(1e-6));

  const ScalarFn clipped = make_fn("clip", Interval::closed(0.0, 1.0),
                                   [](double x) { return x; });
  CHECK(error_code_of([&] { numeric_derivative(clipped, 1.0); }) ==
        Errc::out_of_domain);
}

TEST_CASE("phi is strictly decreasing on interval pieces") {
  for (const auto& s : {builtin_family("linear", {1.0}),
                        builtin_family("golab_schinzel"),
                        builtin_family("hyperbolic", {-1.0})}) {
    for (const auto& piece : s.pieces) {
      const Interval hull = Interval::hull(piece.I, piece.J);
      double prev = std::numeric_limits<double>::infinity();
      for (double x : uniform_samples(hull, 64, 10.0)) {
        const double phi = x + s.F.eval(x);
        CHECK(phi < prev);
        prev = phi;
      }
    }
  }
}

TEST_CASE("sign structure around the fixed point") {
  const SolutionF hyp = builtin_family("hyperbolic", {-1.0});
  for (double x : linspace(0.05, 0.95, 19)) CHECK(hyp.F.eval(x) > 0.0);
  for (double x : linspace(1.05, 9.0, 19)) CHECK(hyp.F.eval(x) < 0.0);

  const SolutionF lin = builtin_family("linear", {1.0});
  for (double x : linspace(-9.0, -1.05, 19)) CHECK(lin.F.eval(x) > 0.0);
  for (double x : linspace(-0.95, 9.0, 19)) CHECK(lin.F.eval(x) < 0.0);
}

TEST_CASE("slope is -2 at every interval-piece fixed point") {
  for (const auto& s : {builtin_family("linear", {3.0}),
                        builtin_family("golab_schinzel"),
                        builtin_family("hyperbolic", {-1.0}),
                        builtin_family("hyperbolic", {-4.0}),
                        builtin_family("quadratic", {1.0, 0.0, -1.0})}) {
    for (double x0 : s.fixed_points) {
      CHECK(std::abs(s.F.eval(x0)) <= 1e-12);
      CHECK(std::abs(numeric_derivative(s.F, x0) + 2.0) <= 1e-4);
    }
  }
}

TEST_CASE("asymptotic slope of the hyperbolic solution") {
  const SolutionF hyp = builtin_family("hyperbolic", {1.0});
  CHECK(std::abs(numeric_derivative(hyp.F, 1e6) + 1.0) <= 1e-5);
}

TEST_CASE("residual closure under transforms") {
  const SolutionF base = builtin_family("hyperbolic", {1.0});
  REQUIRE(residual_functional_eq(base, 501, 1e-9).pass);
  CHECK(residual_functional_eq(transform(base, TransformKind::conjugate, 2.0), 501, 1e-9).pass);
  CHECK(residual_functional_eq(transform(base, TransformKind::shift, 0.7), 501, 1e-9).pass);
  CHECK(residual_functional_eq(transform(base, TransformKind::reflect, 0.0), 501, 1e-9).pass);
}

TEST_CASE("graph symmetry across the diagonal") {
  const SolutionF s = builtin_family("hyperbolic", {-4.0});
  for (const auto& piece : s.pieces) {
    for (double x : uniform_samples(piece.I, 33, 10.0)) {
      const double phi_x = x + s.F.eval(x);
      const double back = phi_x + s.F.eval(phi_x);
      CHECK(std::abs(back - x) <= 1e-9 * (1.0 + std::abs(x)));
    }
  }
}

TEST_CASE("analytic and numeric derivatives agree on interior samples") {
  std::vector<ScalarFn> fns;
  fns.push_back(builtin_family("hyperbolic", {-4.0}).F);
  fns.push_back(builtin_family("quadratic", {1.0, 0.0, 1.0}).F);
  const double e4 = std::exp(-4.0);
  fns.push_back(make_fn("T", Interval::closed(-1.9, 1.9),
                        [e4](double x) { return 2.0 - std::sqrt(x * x + e4); },
                        [e4](double x) { return -x / std::sqrt(x * x + e4); }));
  for (const auto& f : fns) {
    for (double x : linspace(0.5, 1.8, 27)) {
      const double analytic = f.deriv(x);
      const double numeric = numeric_derivative(f, x);
      CHECK(std::abs(analytic - numeric) <= 1e-4 * (1.0 + std::abs(analytic)));
    }
  }
}

TEST_CASE("residual report carries the documented JSON fields") {
  const ResidualReport r = ResidualReport::over_points(
      "demo", {0.0, 1.0, 2.0}, {1e-12, 3e-11, 2e-12}, 1e-10);
  CHECK(r.sup_norm == 3e-11);
  CHECK(r.worst == 1);
  CHECK(r.pass);
  const auto j = r.to_json();
  for (const char* key : {"label", "grid", "residuals", "sup_norm", "tolerance", "pass"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["pass"] == true);
  CHECK(j["grid"].size() == 3);

  const ResidualReport bad = ResidualReport::over_points(
      "demo", {0.0, 1.0}, {1e-2, 1e-3}, 1e-4);
  CHECK_FALSE(bad.pass);
  CHECK(bad.sup_norm == 1e-2);
}
