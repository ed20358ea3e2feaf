#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace fwave {

/// A real interval with independently open or closed endpoints. Endpoints may
/// be infinite; sampling helpers clip to a finite window in that case.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_open = false;
  bool hi_open = false;

  static Interval whole() { return {}; }
  static Interval closed(double a, double b) { return {a, b, false, false}; }
  static Interval open(double a, double b) { return {a, b, true, true}; }
  static Interval open_closed(double a, double b) { return {a, b, true, false}; }
  static Interval closed_open(double a, double b) { return {a, b, false, true}; }

  bool contains(double x) const {
    if (lo_open ? !(x > lo) : !(x >= lo)) return false;
    if (hi_open ? !(x < hi) : !(x <= hi)) return false;
    return true;
  }

  /// Membership against the closure, with absolute slack for roundoff.
  bool contains_approx(double x, double slack) const {
    return x >= lo - slack && x <= hi + slack;
  }

  bool is_finite() const {
    return std::isfinite(lo) && std::isfinite(hi);
  }

  double width() const { return hi - lo; }

  static Interval hull(const Interval& a, const Interval& b);
};

/// n points spanning [lo, hi]. No domain logic, just a linspace.
std::vector<double> linspace(double lo, double hi, int n);

/// Uniform samples of an interval, clipped to [-window, window]. Open
/// endpoints are nudged inward (relative 1e-3) so evaluators with poles or
/// undefined boundary values are never hit exactly at the edge.
std::vector<double> uniform_samples(const Interval& itv, int n,
                                    double window = 10.0);

}  // namespace fwave
