#include "fwave/funceq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fwave/errors.hpp"
#include "fwave/inversion.hpp"

namespace fwave {

namespace {

constexpr double kPoleRadius = 1e-6;
constexpr double kClampBox = 1e6;  // stand-in endpoints for infinite intervals

bool in_pieces(const SolutionF& s, double x) {
  if (s.pieces.empty()) return s.F.domain.contains(x);
  for (const auto& p : s.pieces) {
    if (p.I.contains(x) || p.J.contains(x)) return true;
  }
  return false;
}

bool clear_of_poles(const SolutionF& s, double x) {
  for (double p : s.poles) {
    if (std::abs(x - p) <= kPoleRadius) return false;
  }
  return true;
}

Interval pieces_hull(const SolutionF& s) {
  if (s.pieces.empty()) return s.F.domain;
  Interval h = Interval::hull(s.pieces.front().I, s.pieces.front().J);
  for (std::size_t i = 1; i < s.pieces.size(); ++i) {
    h = Interval::hull(h, Interval::hull(s.pieces[i].I, s.pieces[i].J));
  }
  return h;
}

void check_involution_on(const ScalarFn& phi, const std::vector<double>& us,
                         double scaled_tol) {
  double worst = 0.0, worst_u = 0.0;
  for (double u : us) {
    const double r = std::abs(phi.eval(phi.eval(u)) - u) / (1.0 + std::abs(u));
    if (r > worst) {
      worst = r;
      worst_u = u;
    }
  }
  if (worst > scaled_tol) {
    std::ostringstream os;
    os.precision(17);
    os << phi.label << " fails the round trip: |phi(phi(u)) - u| = " << worst
       << " (scaled) exceeds " << scaled_tol;
    raise(Errc::not_involution, os.str(), worst_u);
  }
}

void self_check_residual(const SolutionF& s, double tolerance) {
  const auto report = residual_functional_eq(s, 101, tolerance);
  if (!report.pass) {
    std::ostringstream os;
    os.precision(17);
    os << s.F.label << " violates the functional equation: sup residual "
       << report.sup_norm << " > " << tolerance;
    raise(Errc::residual_failure, os.str(), report.worst_x());
  }
}

Interval scale_interval(const Interval& itv, double a) {
  // Image of the interval under x -> x / a (domain of x -> F(a x)).
  Interval out;
  if (a > 0) {
    out = {itv.lo / a, itv.hi / a, itv.lo_open, itv.hi_open};
  } else {
    out = {itv.hi / a, itv.lo / a, itv.hi_open, itv.lo_open};
  }
  return out;
}

Interval shift_interval(const Interval& itv, double a) {
  return {itv.lo - a, itv.hi - a, itv.lo_open, itv.hi_open};
}

Interval reflect_interval(const Interval& itv) {
  return {-itv.hi, -itv.lo, itv.hi_open, itv.lo_open};
}

int floor_mod2(double k) {
  const long long n = static_cast<long long>(k);
  return static_cast<int>(((n % 2) + 2) % 2);
}

}  // namespace

ScalarFn involution_from_even_profile(const ScalarFn& psi, double a) {
  if (!(a > 0.0)) raise(Errc::bad_params, "even-profile half-width must be positive");
  if (!psi.domain.contains_approx(-a, 0.0) || !psi.domain.contains_approx(a, 0.0)) {
    raise(Errc::out_of_domain, psi.label + " is not defined on [-a, a]", a);
  }

  const int kSamples = 201;
  for (double x : linspace(0.0, a, kSamples)) {
    const double gap = std::abs(psi.eval(x) - psi.eval(-x));
    if (gap > tol::symmetry) {
      std::ostringstream os;
      os.precision(17);
      os << psi.label << " is not even: |psi(x) - psi(-x)| = " << gap;
      raise(Errc::not_even, os.str(), x);
    }
  }
  // Slope bound on interior samples; the graph rotation needs |psi'| < 1.
  const double half_step = a / kSamples;
  for (double x : linspace(-a + half_step, a - half_step, kSamples)) {
    const double slope = psi.derivative(x);
    if (!(std::abs(slope) < 1.0)) {
      std::ostringstream os;
      os.precision(17);
      os << psi.label << " has |psi'| = " << std::abs(slope) << " >= 1";
      raise(Errc::slope_too_large, os.str(), x);
    }
  }

  ScalarFn graph;
  graph.label = "x+" + psi.label;
  graph.domain = Interval::closed(-a, a);
  graph.eval = [psi](double x) { return x + psi.eval(x); };
  if (psi.has_deriv()) {
    graph.deriv = [psi](double x) { return 1.0 + psi.deriv(x); };
  }
  const MonotoneFn g = make_monotone(std::move(graph), -a, a);

  const double lo = g.fn.eval(-a);
  const double hi = g.fn.eval(a);

  ScalarFn phi;
  phi.label = "involution(" + psi.label + ")";
  phi.domain = Interval::closed(lo, hi);
  phi.eval = [g](double u) {
    return u - 2.0 * invert_at(g, u, tol::profile_invert);
  };
  if (psi.has_deriv()) {
    auto plain = phi.eval;
    Interval dom = phi.domain;
    phi.deriv = [g, psi, plain, dom](double u) {
      const double x = invert_at(g, u, tol::profile_invert);
      const double gp = 1.0 + psi.deriv(x);
      if (std::abs(gp) >= 1e-8) return 1.0 - 2.0 / gp;
      const double eta = 1e-6 * (1.0 + std::abs(u));
      const double ua = std::max(dom.lo, u - eta);
      const double ub = std::min(dom.hi, u + eta);
      return (plain(ub) - plain(ua)) / (ub - ua);
    };
  }

  check_involution_on(phi, linspace(lo, hi, 201), tol::inv);
  return phi;
}

SolutionF solution_from_involution(const ScalarFn& phi, Interval I, Interval J) {
  const auto xs_I = uniform_samples(I, 64, kClampBox);
  const auto xs_J = uniform_samples(J, 64, kClampBox);
  if (xs_I.empty() || xs_J.empty()) {
    raise(Errc::empty_grid, "no sample points on I or J");
  }

  for (double x : xs_I) {
    const double y = phi.eval(x);
    if (!J.contains_approx(y, 1e-9 * (1.0 + std::abs(y)))) {
      raise(Errc::domain_mismatch, phi.label + " does not map I into J", x);
    }
  }
  for (double x : xs_J) {
    const double y = phi.eval(x);
    if (!I.contains_approx(y, 1e-9 * (1.0 + std::abs(y)))) {
      raise(Errc::domain_mismatch, phi.label + " does not map J into I", x);
    }
  }

  std::vector<double> all = xs_I;
  all.insert(all.end(), xs_J.begin(), xs_J.end());
  check_involution_on(phi, all, tol::inv);

  bool decreasing = false;
  for (std::size_t i = 0; i + 1 < xs_I.size(); ++i) {
    const double d = phi.eval(xs_I[i + 1]) - phi.eval(xs_I[i]);
    if (i == 0) {
      if (d == 0.0) raise(Errc::non_monotone, phi.label + " is not strictly monotone on I", xs_I[1]);
      decreasing = d < 0.0;
    } else if ((d < 0.0) != decreasing || d == 0.0) {
      raise(Errc::non_monotone, phi.label + " is not strictly monotone on I", xs_I[i + 1]);
    }
  }

  SolutionF s;
  s.F.label = "F[" + phi.label + "]";
  s.F.domain = Interval::hull(I, J);
  s.F.eval = [phi](double x) { return phi.eval(x) - x; };
  if (phi.has_deriv()) {
    s.F.deriv = [phi](double x) { return phi.deriv(x) - 1.0; };
  }
  s.pieces.push_back({I, J});

  // On an interval union a decreasing involution crosses the diagonal once.
  const bool union_is_interval = std::max(I.lo, J.lo) <= std::min(I.hi, J.hi);
  if (decreasing && union_is_interval) {
    try {
      s.fixed_points.push_back(find_fixed_point(phi, Interval::hull(I, J)));
    } catch (const Error&) {
      // Leave the list empty when the sampled bracket shows no crossing.
    }
  }

  self_check_residual(s, tol::feq_numeric);
  return s;
}

SolutionF transform(const SolutionF& s, TransformKind kind, double a) {
  SolutionF out;
  const ScalarFn F = s.F;
  switch (kind) {
    case TransformKind::conjugate: {
      if (a == 0.0) raise(Errc::zero_scale, "conjugation scale must be nonzero");
      out.F.label = "conjugate(" + F.label + ")";
      out.F.domain = scale_interval(F.domain, a);
      out.F.eval = [F, a](double x) { return F.eval(a * x) / a; };
      if (F.has_deriv()) {
        out.F.deriv = [F, a](double x) { return F.deriv(a * x); };
      }
      for (const auto& p : s.pieces) {
        out.pieces.push_back({scale_interval(p.I, a), scale_interval(p.J, a)});
      }
      for (double v : s.fixed_points) out.fixed_points.push_back(v / a);
      for (double v : s.poles) out.poles.push_back(v / a);
      break;
    }
    case TransformKind::shift: {
      out.F.label = "shift(" + F.label + ")";
      out.F.domain = shift_interval(F.domain, a);
      out.F.eval = [F, a](double x) { return F.eval(a + x); };
      if (F.has_deriv()) {
        out.F.deriv = [F, a](double x) { return F.deriv(a + x); };
      }
      for (const auto& p : s.pieces) {
        out.pieces.push_back({shift_interval(p.I, a), shift_interval(p.J, a)});
      }
      for (double v : s.fixed_points) out.fixed_points.push_back(v - a);
      for (double v : s.poles) out.poles.push_back(v - a);
      break;
    }
    case TransformKind::reflect: {
      out.F.label = "reflect(" + F.label + ")";
      out.F.domain = reflect_interval(F.domain);
      out.F.eval = [F](double x) { return -F.eval(-x); };
      if (F.has_deriv()) {
        out.F.deriv = [F](double x) { return F.deriv(-x); };
      }
      for (const auto& p : s.pieces) {
        out.pieces.push_back({reflect_interval(p.I), reflect_interval(p.J)});
      }
      for (double v : s.fixed_points) out.fixed_points.push_back(-v);
      for (double v : s.poles) out.poles.push_back(-v);
      break;
    }
  }
  self_check_residual(out, tol::feq_numeric);
  return out;
}

SolutionF builtin_family(const std::string& name, const std::vector<double>& params) {
  SolutionF s;
  const auto need = [&](std::size_t n) {
    if (params.size() < n) {
      raise(Errc::bad_params, "family '" + name + "' needs " + std::to_string(n) +
                                  " parameter(s)");
    }
  };

  if (name == "linear") {
    need(1);
    const double a = params[0];
    std::ostringstream label;
    label.precision(17);
    label << "F(x)=-2(x+" << a << ")";
    s.F = make_fn(label.str(), Interval::whole(),
                  [a](double x) { return -2.0 * (x + a); },
                  [](double) { return -2.0; });
    s.pieces.push_back({{-std::numeric_limits<double>::infinity(), -a, false, false},
                        {-a, std::numeric_limits<double>::infinity(), false, false}});
    s.fixed_points.push_back(-a);
  } else if (name == "golab_schinzel") {
    s.F = make_fn("F(x)=1-2x", Interval::whole(),
                  [](double x) { return 1.0 - 2.0 * x; },
                  [](double) { return -2.0; });
    s.pieces.push_back({{-std::numeric_limits<double>::infinity(), 0.5, false, false},
                        {0.5, std::numeric_limits<double>::infinity(), false, false}});
    s.fixed_points.push_back(0.5);
  } else if (name == "piecewise_constant") {
    // (-1)^k on (k, k+1]; at integers the left-open convention gives (-1)^(k-1).
    s.F = make_fn("F(x)=(-1)^k on (k,k+1]", Interval::whole(), [](double x) {
      const double k = std::ceil(x) - 1.0;
      return floor_mod2(k) == 0 ? 1.0 : -1.0;
    });
    for (int k = -10; k < 10; k += 2) {
      s.pieces.push_back({Interval::open_closed(k, k + 1),
                          Interval::open_closed(k + 1, k + 2)});
    }
  } else if (name == "hyperbolic") {
    need(1);
    const double c = params[0];
    if (c == 0.0) raise(Errc::bad_params, "hyperbolic family needs c != 0");
    std::ostringstream label;
    label.precision(17);
    label << "F(x)=-(x+" << c << "/x)";
    s.F = make_fn(label.str(), Interval::whole(),
                  [c](double x) { return x == 0.0 ? 0.0 : -(x + c / x); },
                  [c](double x) { return -1.0 + c / (x * x); });
    s.poles.push_back(0.0);
    const double inf = std::numeric_limits<double>::infinity();
    if (c > 0) {
      s.pieces.push_back({Interval::open(0.0, inf), Interval::open(-inf, 0.0)});
    } else {
      const double r = std::sqrt(-c);
      s.pieces.push_back({Interval::open_closed(0.0, r), Interval::closed_open(r, inf)});
      s.pieces.push_back({Interval::open_closed(-inf, -r), Interval::closed_open(-r, 0.0)});
      s.fixed_points.push_back(r);
      s.fixed_points.push_back(-r);
    }
  } else if (name == "quadratic") {
    need(3);
    const double a = params[0], b = params[1], c = params[2];
    if (a == 0.0 && b == 0.0) {
      raise(Errc::degenerate_family, "quadratic family needs a or b nonzero");
    }
    if (a == 0.0) return builtin_family("linear", {c / b});
    const double disc = b * b - 4.0 * a * c;
    if (disc == 0.0) {
      raise(Errc::degenerate_family, "quadratic family needs b^2 - 4ac != 0");
    }
    const double pole = -b / (2.0 * a);
    std::ostringstream label;
    label.precision(17);
    label << "F(x)=-2(" << a << "x^2+" << b << "x+" << c << ")/(2*" << a << "x+" << b << ")";
    s.F = make_fn(label.str(), Interval::whole(),
                  [a, b, c, pole](double x) {
                    if (x == pole) return 0.0;
                    return -2.0 * (a * x * x + b * x + c) / (2.0 * a * x + b);
                  },
                  [a, b, disc](double x) {
                    const double qp = 2.0 * a * x + b;
                    return -1.0 - disc / (qp * qp);
                  });
    s.poles.push_back(pole);
    const double inf = std::numeric_limits<double>::infinity();
    if (disc > 0) {
      const double r = std::sqrt(disc) / (2.0 * std::abs(a));
      s.pieces.push_back({Interval::open_closed(pole, pole + r),
                          Interval::closed_open(pole + r, inf)});
      s.pieces.push_back({Interval::open_closed(-inf, pole - r),
                          Interval::closed_open(pole - r, pole)});
      s.fixed_points.push_back(pole + r);
      s.fixed_points.push_back(pole - r);
    } else {
      s.pieces.push_back({Interval::open(pole, inf), Interval::open(-inf, pole)});
    }
  } else {
    raise(Errc::bad_params, "unknown family '" + name + "'");
  }

  self_check_residual(s, tol::feq_closed);
  return s;
}

ResidualReport residual_functional_eq(const SolutionF& s, int grid_size,
                                      double tolerance, double window) {
  if (grid_size < 2) raise(Errc::bad_params, "residual grid needs at least 2 points");
  const Interval hull = pieces_hull(s);
  const double lo = std::max(hull.lo, -window);
  const double hi = std::min(hull.hi, window);
  if (!(lo < hi)) raise(Errc::empty_grid, "sampling window misses the domain");

  std::vector<double> grid, residuals;
  grid.reserve(static_cast<std::size_t>(grid_size));
  for (double x : linspace(lo, hi, grid_size)) {
    if (!in_pieces(s, x) || !clear_of_poles(s, x)) continue;
    const double fx = s.F.eval(x);
    const double z = x + fx;
    if (!in_pieces(s, z) || !clear_of_poles(s, z)) continue;
    grid.push_back(x);
    residuals.push_back(std::abs(s.F.eval(z) + fx));
  }
  if (grid.empty()) {
    raise(Errc::empty_grid, "no admissible sample points for " + s.F.label);
  }
  return ResidualReport::over_points("functional_equation[" + s.F.label + "]",
                                     std::move(grid), std::move(residuals),
                                     tolerance);
}

double find_fixed_point(const ScalarFn& phi, const Interval& K) {
  double lo = std::max(K.lo, -kClampBox);
  double hi = std::min(K.hi, kClampBox);
  if (K.lo_open && lo == K.lo) lo += 1e-9 * (1.0 + std::abs(lo));
  if (K.hi_open && hi == K.hi) hi -= 1e-9 * (1.0 + std::abs(hi));
  if (!(lo < hi)) raise(Errc::bad_params, "fixed-point interval is empty");

  double slo = phi.eval(lo) - lo;
  double shi = phi.eval(hi) - hi;
  if (slo == 0.0) return lo;
  if (shi == 0.0) return hi;
  if ((slo > 0.0) == (shi > 0.0)) {
    raise(Errc::no_sign_change,
          "phi(x) - x has the same sign at both endpoints of K for " + phi.label,
          lo);
  }

  double best_x = lo, best_r = std::abs(slo);
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double sm = phi.eval(mid) - mid;
    if (std::abs(sm) < best_r) {
      best_r = std::abs(sm);
      best_x = mid;
    }
    if (std::abs(sm) <= tol::root) return mid;
    if ((sm > 0.0) == (slo > 0.0)) {
      lo = mid;
      slo = sm;
    } else {
      hi = mid;
    }
    if (hi - lo < 4e-16 * (1.0 + std::abs(mid))) break;
  }
  if (best_r <= tol::root) return best_x;
  std::ostringstream os;
  os.precision(17);
  os << "fixed-point residual stalled at " << best_r << " for " << phi.label;
  raise(Errc::convergence_failure, os.str(), best_x);
}

}  // namespace fwave
