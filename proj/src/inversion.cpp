#include "fwave/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fwave/errors.hpp"

namespace fwave {

namespace {

constexpr int kMaxIterations = 200;

}  // namespace

MonotoneFn make_monotone(ScalarFn fn, double lo, double hi, int probe_points) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    raise(Errc::bad_params, "monotone interval must be finite with lo < hi");
  }
  probe_points = std::max(probe_points, 2);
  const auto xs = linspace(lo, hi, probe_points);
  std::vector<double> vs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    vs[i] = fn.eval(xs[i]);
    if (!std::isfinite(vs[i])) {
      raise(Errc::non_monotone, fn.label + " is not finite at a probe point", xs[i]);
    }
  }
  if (vs.front() == vs.back()) {
    raise(Errc::non_monotone, fn.label + " has equal endpoint values", hi);
  }
  const bool inc = vs.front() < vs.back();
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
    const bool ordered = inc ? vs[i] < vs[i + 1] : vs[i] > vs[i + 1];
    if (!ordered) {
      raise(Errc::non_monotone,
            fn.label + " is not strictly " + (inc ? "increasing" : "decreasing") +
                " between probe points",
            xs[i + 1]);
    }
  }
  MonotoneFn m;
  m.fn = std::move(fn);
  m.lo = lo;
  m.hi = hi;
  m.direction = inc ? Direction::increasing : Direction::decreasing;
  return m;
}

InvertResult invert_at_detailed(const MonotoneFn& m, double y, double tol) {
  if (!(tol > 0.0)) raise(Errc::bad_params, "inversion tolerance must be positive");
  const ScalarFn& f = m.fn;
  double xa = m.lo, xb = m.hi;
  double fa = f.eval(xa), fb = f.eval(xb);
  const bool inc = m.direction == Direction::increasing;

  const double vlo = std::min(fa, fb), vhi = std::max(fa, fb);
  const double range_slack = 1e-9 * (1.0 + std::abs(y));
  if (y < vlo - range_slack || y > vhi + range_slack) {
    raise(Errc::out_of_range,
          "target value outside the range of " + f.label + " on its interval", y);
  }
  y = std::clamp(y, vlo, vhi);
  if (fa == y) return {xa, xa, xa, 0.0, 0};
  if (fb == y) return {xb, xb, xb, 0.0, 0};

  double best_x = 0.5 * (xa + xb);
  double best_f = 0.0;
  double best_r = std::numeric_limits<double>::infinity();

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    double xc = 0.5 * (xa + xb);
    // Newton proposal on odd iterations, accepted only strictly inside the
    // bracket; the forced bisections keep the bracket width converging even
    // when the proposals cluster near one endpoint.
    if ((iter & 1) != 0 && f.has_deriv() && std::isfinite(best_r)) {
      const double d = f.deriv(best_x);
      if (std::isfinite(d) && d != 0.0) {
        const double xn = best_x - (best_f - y) / d;
        if (std::isfinite(xn) && xn > xa && xn < xb) xc = xn;
      }
    }

    const double fc = f.eval(xc);
    const double vslack = 1e-12 * (1.0 + std::abs(fc));
    if (fc < std::min(fa, fb) - vslack || fc > std::max(fa, fb) + vslack) {
      raise(Errc::non_monotone,
            f.label + " violates the claimed ordering inside the bracket", xc);
    }

    const double r = std::abs(fc - y);
    if (r < best_r) {
      best_r = r;
      best_x = xc;
      best_f = fc;
    }

    const bool below = inc ? fc < y : fc > y;
    if (below) {
      xa = xc;
      fa = fc;
    } else {
      xb = xc;
      fb = fc;
    }
    if (best_x < xa) {
      best_x = xa;
      best_f = fa;
      best_r = std::abs(fa - y);
    } else if (best_x > xb) {
      best_x = xb;
      best_f = fb;
      best_r = std::abs(fb - y);
    }

    const double width_target =
        std::max(tol, 4e-16 * (std::abs(xa) + std::abs(xb) + 1.0));
    if (best_r <= tol && xb - xa <= 2.0 * width_target) {
      return {best_x, xa, xb, best_r, iter + 1};
    }
  }

  std::ostringstream os;
  os.precision(17);
  os << "inverting " << f.label << " at y=" << y << " did not converge in "
     << kMaxIterations << " iterations (bracket width " << (xb - xa)
     << ", best residual " << best_r << ", tol " << tol << ")";
  raise(Errc::convergence_failure, os.str(), y);
}

double invert_at(const MonotoneFn& m, double y, double tol) {
  return invert_at_detailed(m, y, tol).x;
}

ScalarFn build_inverse(const MonotoneFn& m, double tol) {
  const double fl = m.fn.eval(m.lo);
  const double fh = m.fn.eval(m.hi);
  const Interval dom = Interval::closed(std::min(fl, fh), std::max(fl, fh));

  ScalarFn inv;
  inv.label = "inverse(" + m.fn.label + ")";
  inv.domain = dom;
  inv.eval = [m, tol](double y) { return invert_at(m, y, tol); };
  if (m.fn.has_deriv()) {
    inv.deriv = [m, tol, dom](double y) {
      const double x = invert_at(m, y, tol);
      const double d = m.fn.deriv(x);
      if (std::isfinite(d) && std::abs(d) >= 1e-8) return 1.0 / d;
      // Slope-degenerate: difference the inverse itself.
      const double eta = 1e-6 * (1.0 + std::abs(y));
      const double ya = std::max(dom.lo, y - eta);
      const double yb = std::min(dom.hi, y + eta);
      return (invert_at(m, yb, tol) - invert_at(m, ya, tol)) / (yb - ya);
    };
  }
  return inv;
}

}  // namespace fwave
