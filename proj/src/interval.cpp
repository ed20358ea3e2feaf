#include "fwave/interval.hpp"

#include <algorithm>
#include <cmath>

namespace fwave {

Interval Interval::hull(const Interval& a, const Interval& b) {
  Interval out;
  if (a.lo < b.lo) {
    out.lo = a.lo;
    out.lo_open = a.lo_open;
  } else if (b.lo < a.lo) {
    out.lo = b.lo;
    out.lo_open = b.lo_open;
  } else {
    out.lo = a.lo;
    out.lo_open = a.lo_open && b.lo_open;
  }
  if (a.hi > b.hi) {
    out.hi = a.hi;
    out.hi_open = a.hi_open;
  } else if (b.hi > a.hi) {
    out.hi = b.hi;
    out.hi_open = b.hi_open;
  } else {
    out.hi = a.hi;
    out.hi_open = a.hi_open && b.hi_open;
  }
  return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> xs;
  if (n <= 0) return xs;
  if (n == 1) {
    xs.push_back(0.5 * (lo + hi));
    return xs;
  }
  xs.reserve(static_cast<std::size_t>(n));
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) xs.push_back(i + 1 == n ? hi : lo + step * i);
  return xs;
}

std::vector<double> uniform_samples(const Interval& itv, int n, double window) {
  double lo = itv.lo;
  double hi = itv.hi;
  bool nudge_lo = itv.lo_open;
  bool nudge_hi = itv.hi_open;
  if (lo < -window) {
    lo = -window;
    nudge_lo = false;
  }
  if (hi > window) {
    hi = window;
    nudge_hi = false;
  }
  if (nudge_lo) lo += 1e-3 * (1.0 + std::abs(lo));
  if (nudge_hi) hi -= 1e-3 * (1.0 + std::abs(hi));
  if (!(lo <= hi)) return {};
  if (lo == hi) return {lo};
  return linspace(lo, hi, n);
}

}  // namespace fwave
