// freezewave: construct and verify solutions of F(x + F(x)) = -F(x), and
// synthesize/validate the frozen wave-field pair (sigma, mu) from
// freezing-time and terminal-velocity boundary profiles.
//
// Subcommands: solve, field, verify, example, report. Exit status 0 when all
// checks pass, 1 on a verification failure (first failing check is named on
// stderr), 2 on a configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fwave/errors.hpp"
#include "fwave/fixtures.hpp"
#include "fwave/freezing.hpp"
#include "fwave/funceq.hpp"

namespace {

using nlohmann::ordered_json;
using namespace fwave;

struct Options {
  std::string fixture_name;
  std::vector<double> params;
  std::string grid;
  double t_max = -1.0;
  double tol_feq = -1.0;  // < 0: default budget
  double tol_pde = 1e-4;
  double delta = 1e-3;
  std::string mode = "auto";
  std::string out;
  std::string format;  // empty: command default
  double window = 10.0;
  double corrupt_sigma = 0.0;
};

struct GridSpec {
  int nx = 0;
  int nt = 0;
};

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  char sep = 0;
  std::istringstream is(text);
  if (!(is >> g.nx >> sep >> g.nt) || (sep != 'x' && sep != 'X') || !is.eof()) {
    raise(Errc::bad_params, "grid must look like NXxNT, got '" + text + "'");
  }
  if (g.nx < 3 || g.nt < 3) {
    raise(Errc::bad_params, "grid dimensions must be >= 3");
  }
  return g;
}

ValidationMode resolve_mode(const Fixture& fx, const std::string& requested) {
  if (requested == "strict") return ValidationMode::strict;
  if (requested == "lenient") return ValidationMode::lenient;
  if (requested == "auto") return fx.mode;
  raise(Errc::bad_params, "mode must be strict, lenient or auto");
}

void write_output(const Options& opt, const std::string& payload) {
  if (opt.out.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream os(opt.out, std::ios::binary);
  if (!os) raise(Errc::bad_params, "cannot open output path '" + opt.out + "'");
  os << payload;
}

std::string fixture_tag(const Fixture& fx, const Options& opt) {
  std::string tag = fx.name;
  if (!opt.params.empty()) {
    tag += "(";
    for (std::size_t i = 0; i < opt.params.size(); ++i) {
      if (i) tag += ",";
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", opt.params[i]);
      tag += buf;
    }
    tag += ")";
  }
  return tag;
}

// Collects per-check summary lines and remembers the first failure for the
// exit diagnostic.
class CheckList {
 public:
  void add(const std::string& name, const ResidualReport& r) {
    ordered_json c;
    c["name"] = name;
    c["pass"] = r.pass;
    c["sup_norm"] = r.sup_norm;
    c["tolerance"] = r.tolerance;
    c["worst_x"] = r.worst_x();
    if (!r.grid_xt.empty()) c["worst_t"] = r.worst_t();
    push(name, r.pass, describe(r), std::move(c));
    reports_.push_back(r);
  }

  void add_flag(const std::string& name, bool pass, const std::string& detail) {
    ordered_json c;
    c["name"] = name;
    c["pass"] = pass;
    if (!detail.empty()) c["detail"] = detail;
    push(name, pass, detail, std::move(c));
  }

  bool all_pass() const { return first_failure_.empty(); }
  const std::string& first_failure() const { return first_failure_; }
  const std::string& first_failure_detail() const { return first_failure_detail_; }
  const ordered_json& checks() const { return checks_; }
  const std::vector<ResidualReport>& reports() const { return reports_; }

 private:
  static std::string describe(const ResidualReport& r) {
    std::ostringstream os;
    os.precision(6);
    os << "sup_norm=" << r.sup_norm << " tolerance=" << r.tolerance
       << " at x=" << r.worst_x();
    if (!r.grid_xt.empty()) os << ", t=" << r.worst_t();
    return os.str();
  }

  void push(const std::string& name, bool pass, const std::string& detail,
            ordered_json c) {
    checks_.push_back(std::move(c));
    if (!pass && first_failure_.empty()) {
      first_failure_ = name;
      first_failure_detail_ = detail;
    }
  }

  ordered_json checks_ = ordered_json::array();
  std::vector<ResidualReport> reports_;
  std::string first_failure_;
  std::string first_failure_detail_;
};

double default_tol_feq(const Options& opt) {
  return opt.tol_feq > 0 ? opt.tol_feq : tol::feq_closed;
}

ResidualReport involution_roundtrip(const SolutionF& s, double window) {
  const ScalarFn F = s.F;
  auto phi = [F](double x) { return x + F.eval(x); };

  std::vector<double> grid, rs;
  for (const auto& piece : s.pieces) {
    for (const Interval* itv : {&piece.I, &piece.J}) {
      for (double x : uniform_samples(*itv, 64, window)) {
        grid.push_back(x);
        rs.push_back(std::abs(phi(phi(x)) - x) / (1.0 + std::abs(x)));
      }
    }
  }
  return ResidualReport::over_points("involution_roundtrip", std::move(grid),
                                     std::move(rs), 1e-9);
}

void run_equation_checks(const Fixture& fx, const Options& opt, CheckList& out) {
  if (!fx.solution) return;
  out.add("functional_equation",
          residual_functional_eq(*fx.solution, 1001, default_tol_feq(opt),
                                 opt.window));
  out.add("involution_roundtrip", involution_roundtrip(*fx.solution, opt.window));
}

void run_field_checks(const Fixture& fx, const Options& opt, const GridSpec& grid,
                      CheckList& out) {
  if (!fx.problem) return;
  const ValidationMode mode = resolve_mode(fx, opt.mode);
  const auto findings = validate_problem(*fx.problem);
  {
    std::string failing;
    for (const auto& f : findings) {
      if (!f.pass && (mode == ValidationMode::strict || f.essential)) {
        failing += (failing.empty() ? "" : "; ") + f.hypothesis;
      }
    }
    out.add_flag("validation", failing.empty(), failing);
    if (!failing.empty()) return;
  }

  FieldPair fp = synthesize_fields(*fx.problem, mode, fx.extension);
  if (opt.corrupt_sigma != 0.0) fp = with_sigma_defect(fp, opt.corrupt_sigma);

  out.add("functional_equation_bridge",
          residual_functional_eq(equation_solution_from_problem(*fx.problem, mode),
                                 1001, tol::feq_numeric, opt.window));
  out.add("bridge_identity", bridge_identity_check(*fx.problem, 101, mode, 1e-8));

  PdeOptions po;
  po.delta = opt.delta;
  po.t_max = opt.t_max;
  po.tolerance = opt.tol_pde;
  if (fx.fields) po.profile_kinks = fx.fields->profile_kinks;
  const PdeResiduals pde = residual_pde(fp, grid.nx, grid.nt, po);
  out.add("pde_r1", pde.r1);
  out.add("pde_r2", pde.r2);
  out.add("pde_wave", pde.wave);

  const double value_tol = fx.name == "ex53" ? 1e-6 : 1e-8;
  const BoundaryReport bd = verify_freezing_boundary(fp, 51, 1000, value_tol);
  out.add("freeze_time_first_zero", bd.first_zero);
  out.add("terminal_velocity", bd.terminal_velocity);
  out.add("profile_antisymmetry", bd.antisymmetry);
  {
    std::ostringstream os;
    os.precision(17);
    if (!bd.decay_ok) os << "sigma not monotone along t at x=" << bd.decay_witness_x;
    out.add_flag("sigma_monotone_decay", bd.decay_ok, os.str());
  }

  out.add("reflection_identity",
          reflection_identity_check(*fx.problem, 101, mode, 1e-9));

  // The oracle comparison exercises the honest pipeline; with an injected
  // defect the corrupted evaluators are already covered by the checks above.
  if (fx.fields && opt.corrupt_sigma == 0.0) {
    out.add("oracle_sigma_mu", oracle_compare(fx.name, grid.nx, grid.nt));
  }
}

int finish_verification(const Options& opt, const Fixture& fx, CheckList& checks,
                        bool include_reports) {
  ordered_json summary;
  summary["fixture"] = fx.name;
  summary["mode"] = resolve_mode(fx, opt.mode) == ValidationMode::strict
                        ? "strict"
                        : "lenient";
  if (opt.corrupt_sigma != 0.0) summary["corrupt_sigma"] = opt.corrupt_sigma;
  summary["checks"] = checks.checks();
  summary["pass"] = checks.all_pass();
  if (include_reports) {
    auto reports = ordered_json::array();
    for (const auto& r : checks.reports()) reports.push_back(r.to_json());
    summary["reports"] = std::move(reports);
  }
  write_output(opt, summary.dump(2) + "\n");
  if (!checks.all_pass()) {
    std::cerr << "FAIL " << checks.first_failure() << ": "
              << checks.first_failure_detail() << "\n";
    return 1;
  }
  return 0;
}

int cmd_verify(const Options& opt, bool include_reports) {
  const GridSpec grid = parse_grid(opt.grid);
  const Fixture fx = fixture(opt.fixture_name, opt.params);
  CheckList checks;
  run_equation_checks(fx, opt, checks);
  run_field_checks(fx, opt, grid, checks);
  return finish_verification(opt, fx, checks, include_reports);
}

int cmd_solve(const Options& opt) {
  const GridSpec grid = parse_grid(opt.grid);
  const Fixture fx = fixture(opt.fixture_name, opt.params);
  if (!fx.solution) {
    raise(Errc::missing_closed_form,
          "fixture '" + fx.name + "' has no equation solution");
  }
  const ResidualReport report = residual_functional_eq(
      *fx.solution, grid.nx, default_tol_feq(opt), opt.window);

  const std::string format = opt.format.empty() ? "csv" : opt.format;
  if (format == "csv") {
    std::ostringstream os;
    os << "x,F\n";
    char buf[64];
    for (double x : report.grid) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", x, fx.solution->F.eval(x));
      os << buf << '\n';
    }
    write_output(opt, os.str());
  } else if (format == "json") {
    ordered_json j;
    j["fixture"] = fixture_tag(fx, opt);
    auto samples = ordered_json::array();
    for (double x : report.grid) samples.push_back({x, fx.solution->F.eval(x)});
    j["samples"] = std::move(samples);
    j["residual"] = report.to_json();
    write_output(opt, j.dump(2) + "\n");
  } else {
    raise(Errc::bad_params, "format must be csv or json");
  }

  if (!report.pass) {
    std::cerr << "FAIL functional_equation: sup_norm=" << report.sup_norm
              << " tolerance=" << report.tolerance << " at x=" << report.worst_x()
              << "\n";
    return 1;
  }
  return 0;
}

int cmd_field(const Options& opt) {
  const GridSpec grid = parse_grid(opt.grid);
  const Fixture fx = fixture(opt.fixture_name, opt.params);
  if (!fx.problem) {
    raise(Errc::bad_params, "fixture '" + fx.name + "' has no field problem");
  }
  FieldPair fp = synthesize_fields(*fx.problem, resolve_mode(fx, opt.mode),
                                   fx.extension);
  if (opt.corrupt_sigma != 0.0) fp = with_sigma_defect(fp, opt.corrupt_sigma);
  const double t_max =
      opt.t_max > 0 ? opt.t_max : fx.problem->freeze_time.eval(0.0);
  const FieldGrid fg = sample_grid(fp, grid.nx, grid.nt, t_max);

  const std::string format = opt.format.empty() ? "csv" : opt.format;
  if (format == "csv") {
    std::ostringstream os;
    write_csv(fg, os);
    write_output(opt, os.str());
  } else if (format == "json") {
    ordered_json j;
    j["fixture"] = fx.name;
    j["xs"] = fg.xs;
    j["ts"] = fg.ts;
    j["sigma"] = fg.sigma;
    j["mu"] = fg.mu;
    j["frozen"] = fg.frozen;
    write_output(opt, j.dump(2) + "\n");
  } else {
    raise(Errc::bad_params, "format must be csv or json");
  }
  return 0;
}

int cmd_example(const Options& opt) {
  const GridSpec grid = parse_grid(opt.grid);
  const Fixture fx = fixture(opt.fixture_name, opt.params);
  const ResidualReport report = oracle_compare(fx.name, grid.nx, grid.nt);
  ordered_json j;
  j["fixture"] = fx.name;
  j["oracle_compare"] = report.to_json();
  write_output(opt, j.dump(2) + "\n");
  if (!report.pass) {
    std::cerr << "FAIL oracle_compare: sup_norm=" << report.sup_norm
              << " tolerance=" << report.tolerance << " at x=" << report.worst_x()
              << ", t=" << report.worst_t() << "\n";
    return 1;
  }
  return 0;
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("fixture,--fixture", opt.fixture_name, "fixture name")
      ->required();
  cmd->add_option("--param", opt.params, "family parameters (repeatable)");
  cmd->add_option("--grid", opt.grid, "evaluation grid, NXxNT")->required();
  cmd->add_option("--t-max", opt.t_max, "time horizon (default: T(0))");
  cmd->add_option("--tol-feq", opt.tol_feq, "functional-equation tolerance");
  cmd->add_option("--tol-pde", opt.tol_pde, "PDE residual tolerance");
  cmd->add_option("--delta", opt.delta, "finite-difference step");
  cmd->add_option("--mode", opt.mode, "strict|lenient|auto (default auto)");
  cmd->add_option("--out", opt.out, "output path (default stdout)");
  cmd->add_option("--format", opt.format, "csv|json");
  cmd->add_option("--window", opt.window, "sampling window for infinite domains");
  cmd->add_option("--corrupt-sigma", opt.corrupt_sigma,
                  "inject coeff*z^2 into sigma's profile (verification self-test)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "freezewave: solutions of F(x+F(x)) = -F(x) and frozen wave-field "
      "synthesis/verification"};
  app.require_subcommand(1);
  app.set_config("--config", "", "config file (key=value; sections per subcommand)");

  Options opt;
  CLI::App* solve = app.add_subcommand("solve", "emit F samples and residual report");
  CLI::App* field = app.add_subcommand("field", "emit the sampled field grid");
  CLI::App* verify = app.add_subcommand("verify", "run the full residual suite");
  CLI::App* example = app.add_subcommand("example", "compare synthesis against closed forms");
  CLI::App* report = app.add_subcommand("report", "verify with full residual arrays");
  for (CLI::App* cmd : {solve, field, verify, example, report}) {
    add_common(cmd, opt);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit 0; parse errors are config errors
  }

  try {
    if (solve->parsed()) return cmd_solve(opt);
    if (field->parsed()) return cmd_field(opt);
    if (verify->parsed()) return cmd_verify(opt, false);
    if (example->parsed()) return cmd_example(opt);
    if (report->parsed()) return cmd_verify(opt, true);
  } catch (const fwave::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
