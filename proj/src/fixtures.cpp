#include "fwave/fixtures.hpp"

#include <cmath>
#include <map>

#include "fwave/errors.hpp"

namespace fwave {

namespace {

// Shared constants, computed at full precision at load time.
struct Consts {
  double e2 = std::exp(-2.0);     // e^-2
  double e4 = std::exp(-4.0);     // e^-4
  double a51 = std::sqrt(4.0 - std::exp(-4.0));
};
const Consts k{};

std::string canonical(const std::string& name) {
  static const std::map<std::string, std::string> aliases = {
      {"progressive", "ex51"},
      {"simultaneous", "ex52"},
      {"mixed", "ex53"},
  };
  const auto it = aliases.find(name);
  return it == aliases.end() ? name : it->second;
}

// ex51: smooth data; the freezing front progresses continuously from the
// endpoints toward the center.
Fixture make_ex51() {
  Fixture fx;
  fx.name = "ex51";
  fx.note = "progressive freezing; log-profile fields";
  fx.mode = ValidationMode::strict;
  fx.extension = ExtensionKind::linear_c1;

  const double a = k.a51;
  const double e4 = k.e4;

  FreezingProblem p;
  p.half_width = a;
  p.freeze_time = make_fn(
      "T(x)=2-sqrt(x^2+e^-4)", Interval::closed(-a, a),
      [e4](double x) { return 2.0 - std::sqrt(x * x + e4); },
      [e4](double x) { return -x / std::sqrt(x * x + e4); });
  p.terminal_velocity = make_fn(
      "h(x)=2*log(sqrt(x^2+e^-4)+x)+4", Interval::closed(-a, a),
      [e4](double x) { return 2.0 * std::log(std::sqrt(x * x + e4) + x) + 4.0; },
      [e4](double x) { return 2.0 / std::sqrt(x * x + e4); });
  fx.problem = p;

  // T(a) = 0 because a^2 + e^-4 = 4; the core interval is then [-a, a].
  // Verified here rather than assumed.
  if (std::abs(p.freeze_time.eval(a)) > 1e-12) {
    raise(Errc::bad_params, "ex51 arithmetic: T(a) != 0",
          p.freeze_time.eval(a));
  }

  ClosedFormFields cf;
  cf.sigma = [](double x, double t) {
    return std::log(x - t + 2.0) + std::log(-x - t + 2.0) + 4.0;
  };
  cf.mu = [](double x, double t) {
    return std::log(x - t + 2.0) - std::log(-x - t + 2.0);
  };
  cf.f = make_fn("f(z)=log(z+2)+2", Interval::closed(-a, a),
                 [](double z) { return std::log(z + 2.0) + 2.0; },
                 [](double z) { return 1.0 / (z + 2.0); });
  cf.band_halfwidth = 0.0;
  cf.oracle_tolerance = 1e-8;
  fx.fields = std::move(cf);

  // Equation side: F(x) = -((2x+2)^2 - e^-4)/(4x+4), the quadratic family
  // with coefficients (1, 2, 1 - e^-4/4).
  fx.solution = builtin_family("quadratic", {1.0, 2.0, 1.0 - e4 / 4.0});
  return fx;
}

// ex52: constant freezing time; the whole interval freezes at once. The
// reference fields come from the peaked (tent) profile, so the fixture
// declares the even-reflection extension and its kink at z = 0.
Fixture make_ex52() {
  Fixture fx;
  fx.name = "ex52";
  fx.note = "simultaneous freezing at the terminal time; tent profile";
  fx.mode = ValidationMode::lenient;  // T is constant, not strictly decreasing
  fx.extension = ExtensionKind::even_reflection;

  FreezingProblem p;
  p.half_width = 1.0;
  p.open_interval = true;  // sigma vanishes identically at x = +-1
  p.freeze_time = make_fn("T(x)=1", Interval::closed(-1.0, 1.0),
                          [](double) { return 1.0; },
                          [](double) { return 0.0; });
  p.terminal_velocity = make_fn("h(x)=2x", Interval::closed(-1.0, 1.0),
                                [](double x) { return 2.0 * x; },
                                [](double) { return 2.0; });
  fx.problem = p;

  ClosedFormFields cf;
  cf.sigma = [](double x, double t) {
    return std::abs(x) > t ? 2.0 - 2.0 * std::abs(x) : 2.0 - 2.0 * t;
  };
  // In the outer region mu carries the sign of x: mu is odd in x and meets
  // h(x) = 2x at the front (the sign is forced by both).
  cf.mu = [](double x, double t) {
    return std::abs(x) > t ? (x > 0 ? 2.0 * t : -2.0 * t) : 2.0 * x;
  };
  cf.f = make_fn("f(z)=1-|z|", Interval::whole(),
                 [](double z) { return z <= 0.0 ? 1.0 + z : 1.0 - z; });
  cf.profile_kinks = {0.0};
  cf.band_halfwidth = 3e-3;
  cf.oracle_tolerance = 1e-10;
  fx.fields = std::move(cf);

  fx.solution = builtin_family("linear", {0.5});  // F(x) = -2(x + 1/2)
  return fx;
}

// ex53: piecewise-linear freezing time; the outer regions freeze
// progressively, the middle freezes at once at t = 1/2.
Fixture make_ex53() {
  Fixture fx;
  fx.name = "ex53";
  fx.note = "mixed freezing modes; piecewise-linear fields";
  fx.mode = ValidationMode::lenient;  // T has kinks and a flat middle
  fx.extension = ExtensionKind::linear_c1;

  FreezingProblem p;
  p.half_width = 2.0;
  p.freeze_time = make_fn(
      "T(x)=1-|x|/2 outside |x|<1, 1/2 inside", Interval::closed(-2.0, 2.0),
      [](double x) { return std::abs(x) >= 1.0 ? 1.0 - std::abs(x) / 2.0 : 0.5; },
      [](double x) { return std::abs(x) >= 1.0 ? -0.5 * (x > 0 ? 1.0 : -1.0) : 0.0; });
  p.terminal_velocity = make_fn("h(x)=x", Interval::closed(-2.0, 2.0),
                                [](double x) { return x; },
                                [](double) { return 1.0; });
  fx.problem = p;

  // Five-branch reference fields, first matching branch wins; valid for
  // |x| <= 2, 0 <= t <= 1/2, t <= 1 - |x|/2.
  ClosedFormFields cf;
  cf.sigma = [](double x, double t) {
    if (x + 1.5 <= t && t <= -x - 0.5) return (2.0 * x - 4.0 * t + 4.0) / 3.0;
    if (x - 0.5 <= t && t <= x + 1.5 && t <= -x - 0.5)
      return x / 6.0 - 5.0 * t / 6.0 + 7.0 / 12.0;
    if (x - 0.5 <= t && t <= x + 1.5 && -x - 0.5 <= t && t <= -x + 1.5)
      return 0.5 - t;
    if (t <= x - 0.5 && -x - 0.5 <= t && t <= -x + 1.5)
      return -x / 6.0 - 5.0 * t / 6.0 + 7.0 / 12.0;
    return (-2.0 * x - 4.0 * t + 4.0) / 3.0;  // -x + 3/2 <= t <= x - 1/2
  };
  cf.mu = [](double x, double t) {
    if (x + 1.5 <= t && t <= -x - 0.5) return (4.0 * x - 2.0 * t + 2.0) / 3.0;
    if (x - 0.5 <= t && t <= x + 1.5 && t <= -x - 0.5)
      return 5.0 * x / 6.0 - t / 6.0 - 1.0 / 12.0;
    if (x - 0.5 <= t && t <= x + 1.5 && -x - 0.5 <= t && t <= -x + 1.5)
      return x;
    if (t <= x - 0.5 && -x - 0.5 <= t && t <= -x + 1.5)
      return 5.0 * x / 6.0 + t / 6.0 + 1.0 / 12.0;
    return (4.0 * x + 2.0 * t - 2.0) / 3.0;
  };
  // f = g^{-1}/2 with the three-branch inverse of g(x) = x - T(x).
  cf.f = make_fn("f(z)=g^{-1}(z)/2", Interval::closed(-2.0, 2.0), [](double z) {
    if (z >= 0.5) return (z + 1.0) / 3.0;
    if (z > -1.5) return 0.5 * (z + 0.5);
    return z + 1.0;
  });
  cf.profile_kinks = {-1.5, 0.5};
  cf.band_halfwidth = 3e-3;
  cf.oracle_tolerance = 1e-8;
  fx.fields = std::move(cf);

  // Equation side: F(x) = -g^{-1}(2x) on [-1, 1]; its involution swaps
  // [-1, -3/4] with [1/4, 1] and maps [-3/4, 1/4] to itself.
  SolutionF s;
  s.F = make_fn("F(x)=-g^{-1}(2x)", Interval::closed(-1.0, 1.0), [](double x) {
    const double z = 2.0 * x;
    if (z >= 0.5) return -2.0 * (z + 1.0) / 3.0;
    if (z > -1.5) return -(z + 0.5);
    return -2.0 * (z + 1.0);
  });
  s.pieces.push_back({Interval::closed(-0.75, -0.25), Interval::closed(-0.25, 0.25)});
  s.pieces.push_back({Interval::closed(-1.0, -0.75), Interval::closed(0.25, 1.0)});
  s.fixed_points.push_back(-0.25);
  fx.solution = std::move(s);
  return fx;
}

}  // namespace

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {
      "linear",      "golab_schinzel", "piecewise_constant",
      "hyperbolic",  "quadratic",      "ex51",
      "ex52",        "ex53",           "progressive",
      "simultaneous", "mixed",
  };
  return names;
}

Fixture fixture(const std::string& name, const std::vector<double>& params) {
  const std::string id = canonical(name);
  if (id == "ex51") return make_ex51();
  if (id == "ex52") return make_ex52();
  if (id == "ex53") return make_ex53();

  if (id == "linear" || id == "golab_schinzel" || id == "piecewise_constant" ||
      id == "hyperbolic" || id == "quadratic") {
    std::vector<double> ps = params;
    if (ps.empty()) {
      if (id == "linear") ps = {1.0};
      if (id == "hyperbolic") ps = {1.0};
      if (id == "quadratic") ps = {1.0, 0.0, -1.0};
    }
    Fixture fx;
    fx.name = id;
    fx.note = "closed-form family";
    fx.solution = builtin_family(id, ps);
    return fx;
  }
  raise(Errc::unknown_fixture, "no fixture named '" + name + "'");
}

ResidualReport oracle_compare(const std::string& name, int n_x, int n_t) {
  const Fixture fx = fixture(name);
  if (!fx.problem) {
    raise(Errc::missing_closed_form,
          "fixture '" + name + "' has no freezing problem");
  }
  if (!fx.fields) {
    raise(Errc::missing_closed_form,
          "fixture '" + name + "' has no closed-form fields");
  }
  if (n_x < 3 || n_t < 3) raise(Errc::bad_params, "grid needs n_x, n_t >= 3");

  const FieldPair fp = synthesize_fields(*fx.problem, fx.mode, fx.extension);
  const double a = fx.problem->half_width;
  const double t_max = fx.problem->freeze_time.eval(0.0);
  const double half_dt = 0.5 * t_max / (n_t - 1);
  const auto& cf = *fx.fields;

  std::vector<std::array<double, 2>> pts;
  std::vector<double> devs;
  for (double x : linspace(-a, a, n_x)) {
    const double tx = fx.problem->freeze_time.eval(x);
    for (double t : linspace(0.0, t_max, n_t)) {
      if (t >= tx - half_dt) continue;  // frozen cell
      bool banded = false;
      for (double kz : cf.profile_kinks) {
        if (std::abs((x - t) - kz) <= cf.band_halfwidth ||
            std::abs((x + t) + kz) <= cf.band_halfwidth) {
          banded = true;
          break;
        }
      }
      if (banded) continue;
      const double ds = std::abs(fp.sigma(x, t) - cf.sigma(x, t));
      const double dm = std::abs(fp.mu(x, t) - cf.mu(x, t));
      pts.push_back({x, t});
      devs.push_back(std::max(ds, dm));
    }
  }
  if (pts.empty()) raise(Errc::empty_grid, "no unfrozen points to compare");
  return ResidualReport::over_grid("oracle_compare[" + fx.name + "]",
                                   std::move(pts), std::move(devs),
                                   cf.oracle_tolerance);
}

}  // namespace fwave
