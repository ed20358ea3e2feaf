#include "fwave/freezing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "fwave/errors.hpp"

namespace fwave {

namespace {

constexpr int kCheckSamples = 201;

struct KinkResult {
  bool found = false;
  double at = 0.0;
  double jump = 0.0;
};

// Slope-jump detector. The one-sided difference gap |fwd - bwd| at step eta
// scales like eta * f'' where f is smooth, but stays at the size of the
// derivative jump across a kink. Comparing the gap at one sample spacing
// against the gap at four spacings separates the two: overlapping
// one-spacing windows cover every interior kink.
KinkResult find_derivative_kink(const ScalarFn& f, double lo, double hi) {
  KinkResult out;
  const double margin = 0.02 * (hi - lo);
  const auto xs = linspace(lo + margin, hi - margin, kCheckSamples);
  const double sp = (xs[1] - xs[0]);
  for (double x : xs) {
    auto gap = [&](double eta) {
      const double fwd = (f.eval(x + eta) - f.eval(x)) / eta;
      const double bwd = (f.eval(x) - f.eval(x - eta)) / eta;
      return std::abs(fwd - bwd);
    };
    const double g_small = gap(sp);
    const double g_big = gap(4.0 * sp);
    const double slope =
        std::abs(f.eval(x + sp) - f.eval(x - sp)) / (2.0 * sp);
    if (g_small > 1e-4 * (1.0 + slope) && g_small > 0.4 * g_big &&
        g_small > out.jump) {
      out.found = true;
      out.at = x;
      out.jump = g_small;
    }
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double tent_extend(const ScalarFn& core_f, const Interval& core,
                   ExtensionKind ext, double f_lo, double f_hi, double s_lo,
                   double s_hi, double z) {
  if (z > core.hi) {
    if (ext == ExtensionKind::even_reflection) {
      const double zr = 2.0 * core.hi - z;
      // Valid for one core width; clamp beyond (never reached by the fields).
      return core_f.eval(std::max(zr, core.lo));
    }
    return f_hi + s_hi * (z - core.hi);
  }
  if (z < core.lo) {
    if (ext == ExtensionKind::even_reflection) {
      const double zr = 2.0 * core.lo - z;
      return core_f.eval(std::min(zr, core.hi));
    }
    return f_lo + s_lo * (z - core.lo);
  }
  return core_f.eval(z);
}

}  // namespace

std::vector<Finding> validate_problem(const FreezingProblem& p) {
  std::vector<Finding> out;
  const double a = p.half_width;
  const ScalarFn& T = p.freeze_time;
  const ScalarFn& h = p.terminal_velocity;

  {
    Finding f{"T even", true, 0.0, "", true};
    for (double x : linspace(0.0, a, kCheckSamples)) {
      const double gap = std::abs(T.eval(x) - T.eval(-x));
      if (gap > tol::symmetry) {
        f.pass = false;
        f.witness = x;
        f.detail = "|T(x) - T(-x)| = " + fmt(gap);
        break;
      }
    }
    out.push_back(std::move(f));
  }
  {
    Finding f{"T strictly decreasing on (0, a]", true, 0.0, "", false};
    const auto xs = linspace(a / kCheckSamples, a, kCheckSamples);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      if (!(T.eval(xs[i + 1]) < T.eval(xs[i]))) {
        f.pass = false;
        f.witness = xs[i + 1];
        f.detail = "T does not decrease across this sample";
        break;
      }
    }
    out.push_back(std::move(f));
  }
  {
    Finding f{"T differentiable", true, 0.0, "", false};
    const auto k = find_derivative_kink(T, -a, a);
    if (k.found) {
      f.pass = false;
      f.witness = k.at;
      f.detail = "derivative jump of about " + fmt(k.jump);
    }
    out.push_back(std::move(f));
  }
  {
    Finding f{"|T'| < 1 on (-a, a)", true, 0.0, "", false};
    const double margin = a / kCheckSamples;
    for (double x : linspace(-a + margin, a - margin, kCheckSamples)) {
      const double slope = std::abs(T.derivative(x));
      if (!(slope < 1.0)) {
        f.pass = false;
        f.witness = x;
        f.detail = "|T'| = " + fmt(slope);
        break;
      }
    }
    out.push_back(std::move(f));
  }
  {
    Finding f{"h odd", true, 0.0, "", false};
    for (double x : linspace(0.0, a, kCheckSamples)) {
      const double gap = std::abs(h.eval(x) + h.eval(-x));
      if (gap > tol::symmetry) {
        f.pass = false;
        f.witness = x;
        f.detail = "|h(x) + h(-x)| = " + fmt(gap);
        break;
      }
    }
    out.push_back(std::move(f));
  }
  {
    Finding f{"h strictly increasing", true, 0.0, "", false};
    const auto xs = linspace(-a, a, kCheckSamples);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      if (!(h.eval(xs[i + 1]) > h.eval(xs[i]))) {
        f.pass = false;
        f.witness = xs[i + 1];
        f.detail = "h does not increase across this sample";
        break;
      }
    }
    out.push_back(std::move(f));
  }
  {
    Finding f{"h differentiable", true, 0.0, "", false};
    const auto k = find_derivative_kink(h, -a, a);
    if (k.found) {
      f.pass = false;
      f.witness = k.at;
      f.detail = "derivative jump of about " + fmt(k.jump);
    }
    out.push_back(std::move(f));
  }
  {
    Finding f{"g = x - T(x) strictly increasing", true, 0.0, "", true};
    const auto xs = linspace(-a, a, kCheckSamples);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      const double g0 = xs[i] - T.eval(xs[i]);
      const double g1 = xs[i + 1] - T.eval(xs[i + 1]);
      if (!(g1 > g0)) {
        f.pass = false;
        f.witness = xs[i + 1];
        f.detail = "g is not strictly increasing across this sample";
        break;
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

bool admissible(const std::vector<Finding>& findings, ValidationMode mode) {
  for (const auto& f : findings) {
    if (!f.pass && (mode == ValidationMode::strict || f.essential)) return false;
  }
  return true;
}

GeneratorPair generator_pair(const FreezingProblem& p, ValidationMode mode) {
  const auto findings = validate_problem(p);
  if (!admissible(findings, mode)) {
    std::string failing;
    for (const auto& f : findings) {
      if (!f.pass && (mode == ValidationMode::strict || f.essential)) {
        failing += (failing.empty() ? "" : "; ") + f.hypothesis;
      }
    }
    raise(Errc::inadmissible_problem,
          "problem fails validation (" + failing + ")");
  }

  const double a = p.half_width;
  const ScalarFn T = p.freeze_time;
  ScalarFn g;
  g.label = "g(x)=x-T(x)";
  g.domain = Interval::closed(-a, a);
  g.eval = [T](double x) { return x - T.eval(x); };
  if (T.has_deriv()) {
    g.deriv = [T](double x) { return 1.0 - T.deriv(x); };
  }

  GeneratorPair gp;
  gp.g = make_monotone(std::move(g), -a, a);
  gp.g_inverse = build_inverse(gp.g, tol::profile_invert);

  for (double z : linspace(gp.g.fn.eval(-a), gp.g.fn.eval(a), 33)) {
    const double x = gp.g_inverse.eval(z);
    const double back = gp.g.fn.eval(x);
    if (std::abs(back - z) > tol::inv) {
      raise(Errc::residual_failure,
            "generator round trip degraded: |g(g^{-1}(z)) - z| = " +
                fmt(std::abs(back - z)),
            z);
    }
  }
  return gp;
}

double freezing_time_from_generator(const ScalarFn& G, double x) {
  if (!G.domain.is_finite()) {
    raise(Errc::bad_params, "generator must live on a finite interval");
  }
  const MonotoneFn m = make_monotone(G, G.domain.lo, G.domain.hi);
  return x - invert_at(m, x, tol::profile_invert);
}

const char* extension_name(ExtensionKind k) {
  switch (k) {
    case ExtensionKind::linear_c1: return "linear-C1";
    case ExtensionKind::even_reflection: return "even-reflection";
  }
  return "?";
}

WaveProfile build_wave_profile(const FreezingProblem& p, ValidationMode mode,
                               ExtensionKind ext) {
  const GeneratorPair gp = generator_pair(p, mode);
  const double a = p.half_width;
  const Interval core =
      Interval::closed(gp.g.fn.eval(-a), gp.g.fn.eval(a));

  const ScalarFn h = p.terminal_velocity;
  const ScalarFn ginv = gp.g_inverse;
  ScalarFn core_f;
  core_f.label = "f(z)=h(g^{-1}(z))/2";
  core_f.domain = core;
  core_f.eval = [h, ginv](double z) { return 0.5 * h.eval(ginv.eval(z)); };
  if (h.has_deriv() && ginv.has_deriv()) {
    core_f.deriv = [h, ginv](double z) {
      return 0.5 * h.deriv(ginv.eval(z)) * ginv.deriv(z);
    };
  }

  const double f_lo = core_f.eval(core.lo);
  const double f_hi = core_f.eval(core.hi);
  double s_lo, s_hi;
  if (core_f.has_deriv()) {
    s_lo = core_f.deriv(core.lo);
    s_hi = core_f.deriv(core.hi);
  } else {
    // Second-order one-sided slopes from inside the core.
    const double eta = 1e-6 * (1.0 + core.width());
    s_lo = (-3.0 * f_lo + 4.0 * core_f.eval(core.lo + eta) -
            core_f.eval(core.lo + 2.0 * eta)) /
           (2.0 * eta);
    s_hi = (3.0 * f_hi - 4.0 * core_f.eval(core.hi - eta) +
            core_f.eval(core.hi - 2.0 * eta)) /
           (2.0 * eta);
  }

  WaveProfile wp;
  wp.core = core;
  wp.extension = ext;
  wp.f.label = std::string("wave_profile[") + extension_name(ext) + "]";
  wp.f.domain = Interval::whole();
  Interval core_copy = core;
  wp.f.eval = [core_f, core_copy, ext, f_lo, f_hi, s_lo, s_hi](double z) {
    return tent_extend(core_f, core_copy, ext, f_lo, f_hi, s_lo, s_hi, z);
  };
  if (core_f.has_deriv()) {
    wp.f.deriv = [core_f, core_copy, ext, s_lo, s_hi](double z) {
      if (z > core_copy.hi) {
        if (ext == ExtensionKind::even_reflection) {
          const double zr = 2.0 * core_copy.hi - z;
          return zr >= core_copy.lo ? -core_f.deriv(zr) : 0.0;
        }
        return s_hi;
      }
      if (z < core_copy.lo) {
        if (ext == ExtensionKind::even_reflection) {
          const double zr = 2.0 * core_copy.lo - z;
          return zr <= core_copy.hi ? -core_f.deriv(zr) : 0.0;
        }
        return s_lo;
      }
      return core_f.deriv(z);
    };
  }
  return wp;
}

double FieldPair::sigma(double x, double t) const {
  if (t >= problem.freeze_time.eval(x)) return 0.0;
  return sigma_dalembert(x, t);
}

double FieldPair::mu(double x, double t) const {
  if (t >= problem.freeze_time.eval(x)) return problem.terminal_velocity.eval(x);
  return mu_dalembert(x, t);
}

double FieldPair::sigma_dalembert(double x, double t) const {
  return sigma_profile.eval(x - t) + sigma_profile.eval(-x - t);
}

double FieldPair::mu_dalembert(double x, double t) const {
  return mu_profile.eval(x - t) - mu_profile.eval(-x - t);
}

FieldPair synthesize_fields(const FreezingProblem& p, ValidationMode mode,
                            ExtensionKind ext) {
  FieldPair fp;
  fp.problem = p;
  fp.profile = build_wave_profile(p, mode, ext);
  fp.sigma_profile = fp.profile.f;
  fp.mu_profile = fp.profile.f;
  return fp;
}

FieldPair with_sigma_defect(const FieldPair& fp, double coeff) {
  FieldPair out = fp;
  const ScalarFn base = fp.profile.f;
  out.sigma_profile.label = base.label + "+defect";
  out.sigma_profile.eval = [base, coeff](double z) {
    return base.eval(z) + coeff * z * z;
  };
  if (base.has_deriv()) {
    out.sigma_profile.deriv = [base, coeff](double z) {
      return base.deriv(z) + 2.0 * coeff * z;
    };
  }
  return out;
}

FieldGrid sample_grid(const FieldPair& fp, int n_x, int n_t, double t_max) {
  if (n_x < 3 || n_t < 3) raise(Errc::bad_params, "grid needs n_x, n_t >= 3");
  if (!(t_max > 0.0)) raise(Errc::bad_params, "grid needs t_max > 0");
  const double a = fp.problem.half_width;
  FieldGrid grid;
  grid.xs = linspace(-a, a, n_x);
  grid.ts = linspace(0.0, t_max, n_t);
  const double half_dt = 0.5 * t_max / (n_t - 1);
  const std::size_t total = grid.xs.size() * grid.ts.size();
  grid.sigma.resize(total);
  grid.mu.resize(total);
  grid.frozen.resize(total);
  for (std::size_t i = 0; i < grid.xs.size(); ++i) {
    const double x = grid.xs[i];
    const double tx = fp.problem.freeze_time.eval(x);
    for (std::size_t j = 0; j < grid.ts.size(); ++j) {
      const double t = grid.ts[j];
      const std::size_t k = grid.index(i, j);
      const bool frozen = t >= tx - half_dt;
      grid.frozen[k] = frozen ? 1 : 0;
      grid.sigma[k] = frozen ? 0.0 : fp.sigma_dalembert(x, t);
      grid.mu[k] = frozen ? fp.problem.terminal_velocity.eval(x)
                          : fp.mu_dalembert(x, t);
    }
  }
  return grid;
}

void write_csv(const FieldGrid& grid, std::ostream& os) {
  os << "x,t,sigma,mu,frozen\n";
  char buf[160];
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    for (std::size_t j = 0; j < grid.nt(); ++j) {
      const std::size_t k = grid.index(i, j);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%s", grid.xs[i],
                    grid.ts[j], grid.sigma[k], grid.mu[k],
                    grid.frozen[k] ? "true" : "false");
      os << buf << '\n';
    }
  }
}

namespace {

// Conservative bound on |f'''| over the core, for the default PDE tolerance.
double third_derivative_scale(const FieldPair& fp) {
  const Interval core = fp.profile.core;
  const double eta = 1e-3 * std::max(core.width(), 1e-3);
  double worst = 0.0;
  for (double z : linspace(core.lo + 2 * eta, core.hi - 2 * eta, 33)) {
    const ScalarFn& f = fp.sigma_profile;
    const double d3 = (f.eval(z + 2 * eta) - 2.0 * f.eval(z + eta) +
                       2.0 * f.eval(z - eta) - f.eval(z - 2 * eta)) /
                      (2.0 * eta * eta * eta);
    worst = std::max(worst, std::abs(d3));
  }
  return worst;
}

bool clear_of_bands(double x, double t, const std::vector<double>& kinks,
                    double band) {
  for (double k : kinks) {
    if (std::abs((x - t) - k) <= band) return false;
    if (std::abs((x + t) + k) <= band) return false;
  }
  return true;
}

}  // namespace

PdeResiduals residual_pde(const FieldPair& fp, int n_x, int n_t,
                          const PdeOptions& opt) {
  if (n_x < 3 || n_t < 3) raise(Errc::bad_params, "residual grid needs n_x, n_t >= 3");
  const double a = fp.problem.half_width;
  const double d = opt.delta;
  if (!(d > 0.0)) raise(Errc::bad_params, "finite-difference step must be positive");
  const double t_max =
      opt.t_max > 0.0 ? opt.t_max : fp.problem.freeze_time.eval(0.0);
  const double band = opt.kink_band > 0.0 ? opt.kink_band : 3.0 * d;

  const ScalarFn& T = fp.problem.freeze_time;
  std::vector<std::array<double, 2>> pts;
  std::vector<double> r1, r2, rw;

  for (double x : linspace(-a, a, n_x)) {
    if (x - 2.0 * d <= -a || x + 2.0 * d >= a) continue;
    const double front = std::min({T.eval(x - d), T.eval(x), T.eval(x + d)});
    for (double t : linspace(0.0, t_max, n_t)) {
      if (t < 2.0 * d || t > front - 2.0 * d) continue;
      if (fp.sigma(x, t) <= opt.sigma_floor) continue;
      if (!clear_of_bands(x, t, opt.profile_kinks, band)) continue;

      const double st_p = fp.sigma(x, t + d), st_m = fp.sigma(x, t - d);
      const double sx_p = fp.sigma(x + d, t), sx_m = fp.sigma(x - d, t);
      const double mt_p = fp.mu(x, t + d), mt_m = fp.mu(x, t - d);
      const double mx_p = fp.mu(x + d, t), mx_m = fp.mu(x - d, t);
      const double s0 = fp.sigma(x, t);

      pts.push_back({x, t});
      r1.push_back((mt_p - mt_m) / (2.0 * d) + (sx_p - sx_m) / (2.0 * d));
      r2.push_back((st_p - st_m) / (2.0 * d) + (mx_p - mx_m) / (2.0 * d));
      rw.push_back((st_p - 2.0 * s0 + st_m) / (d * d) -
                   (sx_p - 2.0 * s0 + sx_m) / (d * d));
    }
  }
  if (pts.empty()) {
    raise(Errc::empty_grid, "no admissible interior points for PDE residuals");
  }

  double tolerance = opt.tolerance;
  if (!(tolerance > 0.0)) {
    tolerance = std::max(1e-8, third_derivative_scale(fp) / 3.0 * d * d);
  }

  PdeResiduals out;
  out.delta = d;
  out.r1 = ResidualReport::over_grid("pde_r1[dmu/dt + dsigma/dx]", pts,
                                     std::move(r1), tolerance);
  out.r2 = ResidualReport::over_grid("pde_r2[dsigma/dt + dmu/dx]", pts,
                                     std::move(r2), tolerance);
  out.wave = ResidualReport::over_grid("pde_wave[d2sigma/dt2 - d2sigma/dx2]",
                                       std::move(pts), std::move(rw), tolerance);
  return out;
}

BoundaryReport verify_freezing_boundary(const FieldPair& fp, int n_x,
                                        int fine_steps, double value_tolerance) {
  if (n_x < 3) raise(Errc::bad_params, "boundary check needs n_x >= 3");
  const double a = fp.problem.half_width;
  const ScalarFn& T = fp.problem.freeze_time;
  const ScalarFn& h = fp.problem.terminal_velocity;

  const double t_top = T.eval(0.0);
  const double dt = t_top / fine_steps;

  std::vector<double> xs =
      fp.problem.open_interval
          ? uniform_samples(Interval::open(-a, a), n_x,
                            std::numeric_limits<double>::infinity())
          : linspace(-a, a, n_x);
  std::vector<double> r_tz, r_mu, r_anti;
  bool decay_ok = true;
  double decay_witness = 0.0;

  for (double x : xs) {
    const double tx = T.eval(x);

    double t_hat = t_top + dt;  // sentinel: no zero found
    double prev_sigma = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= fine_steps; ++k) {
      const double t = k * dt;
      const double s = fp.sigma(x, t);
      if (s <= tol::sigma_floor) {
        t_hat = t;
        break;
      }
      // Non-increasing with roundoff slack: declared reflection extensions
      // hold sigma constant along t in the outer region, so strictness is
      // only asserted where the profile is increasing (see tests).
      if (decay_ok && t < tx && s > prev_sigma + 1e-12 * (1.0 + std::abs(s))) {
        decay_ok = false;
        decay_witness = x;
      }
      prev_sigma = s;
    }
    r_tz.push_back(std::abs(t_hat - tx));

    r_mu.push_back(std::abs(fp.mu_dalembert(x, tx) - h.eval(x)));
    r_anti.push_back(std::abs(fp.sigma_profile.eval(x - tx) +
                              fp.sigma_profile.eval(-x - tx)));
  }

  BoundaryReport out;
  out.first_zero = ResidualReport::over_points("freeze_time_first_zero", xs,
                                               std::move(r_tz), dt + 1e-12);
  out.terminal_velocity = ResidualReport::over_points(
      "terminal_velocity", xs, std::move(r_mu), value_tolerance);
  out.antisymmetry = ResidualReport::over_points("profile_antisymmetry", xs,
                                                 std::move(r_anti),
                                                 value_tolerance);
  out.decay_ok = decay_ok;
  out.decay_witness_x = decay_witness;
  return out;
}

ResidualReport reflection_identity_check(const FreezingProblem& p, int n,
                                         ValidationMode mode, double tolerance) {
  const GeneratorPair gp = generator_pair(p, mode);
  const ScalarFn& ginv = gp.g_inverse;
  const ScalarFn& T = p.freeze_time;

  auto phi = [&](double z) { return z - 2.0 * ginv.eval(z); };

  std::vector<double> xs = linspace(-p.half_width, p.half_width, n);
  std::vector<double> rs;
  rs.reserve(xs.size());
  for (double x : xs) {
    const double tx = T.eval(x);
    const double ra = std::abs(phi(-tx + x) - (-tx - x));
    const double rb = std::abs(phi(-tx - x) - (-tx + x));
    rs.push_back(std::max(ra, rb));
  }
  return ResidualReport::over_points("reflection_identity", std::move(xs),
                                     std::move(rs), tolerance);
}

ResidualReport bridge_identity_check(const FreezingProblem& p, int n,
                                     ValidationMode mode, double tolerance) {
  const GeneratorPair gp = generator_pair(p, mode);
  const ScalarFn& ginv = gp.g_inverse;

  std::vector<double> zs = linspace(ginv.domain.lo, ginv.domain.hi, n);
  std::vector<double> rs;
  rs.reserve(zs.size());
  for (double z : zs) {
    const double inner = ginv.eval(z);
    rs.push_back(std::abs(ginv.eval(z - 2.0 * inner) + inner));
  }
  return ResidualReport::over_points("bridge_identity", std::move(zs),
                                     std::move(rs), tolerance);
}

SolutionF equation_solution_from_problem(const FreezingProblem& p,
                                         ValidationMode mode) {
  const GeneratorPair gp = generator_pair(p, mode);
  const ScalarFn ginv = gp.g_inverse;
  const double z0 = gp.g.fn.eval(0.0);  // = -T(0)

  SolutionF s;
  s.F.label = "F(z)=-2g^{-1}(z)";
  s.F.domain = ginv.domain;
  s.F.eval = [ginv](double z) { return -2.0 * ginv.eval(z); };
  if (ginv.has_deriv()) {
    s.F.deriv = [ginv](double z) { return -2.0 * ginv.deriv(z); };
  }
  s.pieces.push_back({Interval::closed(ginv.domain.lo, z0),
                      Interval::closed(z0, ginv.domain.hi)});
  s.fixed_points.push_back(z0);
  return s;
}

}  // namespace fwave
