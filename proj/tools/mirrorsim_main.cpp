// Command-line front end: single-point steady-state reports, parameter
// sweeps, figure presets, the saturation study, and the self-verification
// suite. Exit codes: 0 success, 1 verification failure, 2 invalid input.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "mirrorsim/sweep.hpp"
#include "mirrorsim/verify.hpp"

namespace {

using namespace mirrorsim;

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Everything configurable from flags or a key=value config file, with the
// reference-atom defaults.
struct Settings {
  AtomParams params{.omega1 = 10.0, .omega2 = 5.0, .delta1 = 2.0, .delta2 = 0.0,
                    .gamma1 = 15.1, .gamma2 = 5.4};
  double r = 5.0;
  Direction detector{};
  std::string config_path;
  std::string out_path;
  std::string format = "csv";

  MirrorConfig mirror() const { return MirrorConfig{.r = r}; }
  EmitFormat emit_format() const {
    if (format == "csv") return EmitFormat::csv;
    if (format == "json") return EmitFormat::json;
    fail(Errc::InvalidConfig, "format must be csv or json");
  }
};

// Applies config-file values for exactly those keys the command line left
// untouched, so flags always win.
void apply_config_file(const CLI::App& app, Settings& s) {
  if (s.config_path.empty()) return;
  const std::map<std::string, double*> targets{
      {"omega1", &s.params.omega1}, {"omega2", &s.params.omega2},
      {"delta1", &s.params.delta1}, {"delta2", &s.params.delta2},
      {"gamma1", &s.params.gamma1}, {"gamma2", &s.params.gamma2},
      {"r", &s.r}, {"theta", &s.detector.theta}, {"phi", &s.detector.phi}};
  for (const auto& [key, value] : read_key_value_file(s.config_path)) {
    const auto it = targets.find(key);
    if (it == targets.end()) fail(Errc::InvalidConfig, "unknown config key '" + key + "'");
    if (app.count("--" + key) == 0) *it->second = value;
  }
}

void dump_config(const Settings& s) {
  std::cout << "omega1 = " << fmt17(s.params.omega1) << "\n"
            << "omega2 = " << fmt17(s.params.omega2) << "\n"
            << "delta1 = " << fmt17(s.params.delta1) << "\n"
            << "delta2 = " << fmt17(s.params.delta2) << "\n"
            << "gamma1 = " << fmt17(s.params.gamma1) << "\n"
            << "gamma2 = " << fmt17(s.params.gamma2) << "\n"
            << "r = " << fmt17(s.r) << "\n"
            << "theta = " << fmt17(s.detector.theta) << "\n"
            << "phi = " << fmt17(s.detector.phi) << "\n";
}

void check_direction(const Direction& d) {
  if (!(d.theta >= 0.0 && d.theta <= std::numbers::pi && d.phi >= 0.0 && d.phi < kTwoPi)) {
    fail(Errc::InvalidSweep, "need 0 <= theta <= pi and 0 <= phi < 2pi");
  }
}

void emit_or_print(const SweepResult& result, const Settings& s) {
  if (s.out_path.empty()) {
    std::cout << to_string(result, s.emit_format());
  } else {
    emit(result, s.emit_format(), s.out_path);
  }
}

int run_steady(const Settings& s) {
  const AtomParams p = validate(s.params);
  const MirrorConfig m = validate(s.mirror());
  check_direction(s.detector);
  const RadiativeCorrection rc = radiative_correction(m, p);
  const int sign = calibrated_detuning_sign();
  const DensityMatrix3 rho = steady_state(build_liouvillian(p, rc, sign));
  const P3Result closed = p3_closed_detail(p, rc);

  std::cout << "k31r           = " << fmt17(rc.k31r) << "\n"
            << "gamma_bar_1    = " << fmt17(rc.gamma_bar_1) << " MHz\n"
            << "gamma_bar_2    = " << fmt17(rc.gamma_bar_2) << " MHz\n"
            << "shift          = " << fmt17(rc.shift) << " MHz\n"
            << "detuning_sign  = " << (sign > 0 ? "+1" : "-1") << "\n"
            << "p3_closed      = " << fmt17(closed.value)
            << (closed.dark ? "  (dark state)" : "") << "\n"
            << "p3_liouvillian = " << fmt17(rho.p3()) << "\n"
            << "I1(detector)   = " << fmt17(100.0 * intensity_1(s.detector, rho.p3(), m, p))
            << " 1e-2 MHz/sr\n"
            << "I2(detector)   = " << fmt17(100.0 * intensity_2(s.detector, rho.p3(), p))
            << " 1e-2 MHz/sr\n"
            << "rho_ss (basis |1>,|2>,|3>):\n";
  for (int i = 0; i < 3; ++i) {
    std::cout << " ";
    for (int j = 0; j < 3; ++j) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), " %+.10f%+.10fi", rho.rho(i, j).real(),
                    rho.rho(i, j).imag());
      std::cout << buf;
    }
    std::cout << "\n";
  }
  return 0;
}

int run_sweep_cmd(const Settings& s, const std::string& variable, const std::string& grid,
                  bool cross_check) {
  SweepSpec spec;
  bool found = false;
  for (SweepVariable v : {SweepVariable::r, SweepVariable::omega1, SweepVariable::omega2,
                          SweepVariable::delta1, SweepVariable::delta2}) {
    if (variable == sweep_variable_name(v)) {
      spec.variable = v;
      found = true;
    }
  }
  if (!found) fail(Errc::InvalidSweep, "unknown sweep variable '" + variable + "'");

  char tail = 0;
  if (std::sscanf(grid.c_str(), "%lf:%lf:%d%c", &spec.grid.lo, &spec.grid.hi,
                  &spec.grid.count, &tail) != 3) {
    fail(Errc::InvalidSweep, "grid must be lo:hi:count, e.g. 1:6:1200");
  }
  spec.params = s.params;
  spec.mirror = s.mirror();
  spec.detector = s.detector;
  spec.cross_check = cross_check;
  emit_or_print(run_sweep(spec), s);
  return 0;
}

int run_preset(const Settings& s, const std::string& name) {
  if (name == "fig4") {
    emit_or_print(preset_fig4(), s);
  } else if (name == "fig5") {
    emit_or_print(preset_fig5(), s);
  } else if (name == "fig6") {
    emit_or_print(preset_fig6(), s);
  } else {
    fail(Errc::InvalidSweep, "unknown preset '" + name + "' (expected fig4, fig5 or fig6)");
  }
  return 0;
}

int run_saturation(const CLI::App& app, const Settings& s) {
  // The saturation study lives in the weak-repump regime; unless the user
  // says otherwise, move there instead of the reference-atom defaults.
  AtomParams base = s.params;
  if (app.count("--omega2") == 0) base.omega2 = 1.0;
  if (app.count("--delta1") == 0) base.delta1 = 0.0;
  if (app.count("--delta2") == 0) base.delta2 = 0.1;

  const SaturationResult result = saturation_study(base, s.mirror());
  std::cout << "omega_sat               = " << fmt17(result.omega_sat) << " MHz\n"
            << "amplitude(omega_sat)    = " << fmt17(result.amplitude_at_sat) << "\n"
            << "amplitude(3*omega_sat)  = " << fmt17(result.amplitude_at_3x) << "\n"
            << "ratio                   = " << fmt17(result.ratio) << "\n";
  if (!s.out_path.empty()) {
    SweepResult scan;
    scan.metadata.emplace_back("tool", "mirrorsim 1.0.0");
    scan.metadata.emplace_back("scan", "saturation omega1");
    scan.metadata.emplace_back("omega2", fmt17(base.omega2));
    scan.metadata.emplace_back("delta1", fmt17(base.delta1));
    scan.metadata.emplace_back("delta2", fmt17(base.delta2));
    scan.columns = {Column{"omega1", "MHz", {}}, Column{"mean_p3", "", {}},
                    Column{"amplitude", "", {}}};
    for (const SaturationPoint& point : result.scan) {
      scan.columns[0].values.push_back(point.omega1);
      scan.columns[1].values.push_back(point.mean_p3);
      scan.columns[2].values.push_back(point.amplitude);
    }
    emit(scan, s.emit_format(), s.out_path);
  }
  return 0;
}

int run_verify(const Settings& s, bool mutate) {
  VerifyOptions options;
  options.mutate_gamma_bar_sign = mutate;
  const VerifyReport report = verify_all(options);
  for (const CheckResult& check : report.checks) {
    std::printf("[%s] %-34s max_residual=%.3e tolerance=%.3e\n",
                check.passed ? "PASS" : "FAIL", check.name.c_str(), check.max_residual,
                check.tolerance);
  }
  std::cout << (report.all_passed ? "all checks passed" : "CHECKS FAILED") << "\n";
  if (!s.out_path.empty()) {
    std::ofstream out(s.out_path);
    if (!out) fail(Errc::IoFailure, "cannot open " + s.out_path);
    write_json(report, out);
  }
  return report.all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fluorescence of a laser-driven three-level atom in front of a mirror"};
  app.fallthrough();

  Settings s;
  bool dump = false;
  app.add_option("--omega1", s.params.omega1, "Rabi frequency of laser 1 [MHz]");
  app.add_option("--omega2", s.params.omega2, "Rabi frequency of laser 2 [MHz]");
  app.add_option("--delta1", s.params.delta1, "detuning of laser 1 [MHz]");
  app.add_option("--delta2", s.params.delta2, "detuning of laser 2 [MHz]");
  app.add_option("--gamma1", s.params.gamma1, "free-space decay rate 3->1 [MHz]");
  app.add_option("--gamma2", s.params.gamma2, "free-space decay rate 3->2 [MHz]");
  app.add_option("--r", s.r, "atom-mirror distance [lambda31]");
  app.add_option("--theta", s.detector.theta, "detector polar angle from the mirror axis [rad]");
  app.add_option("--phi", s.detector.phi, "detector azimuth [rad]");
  app.add_option("--config", s.config_path, "key=value file with parameter defaults");
  app.add_option("--format", s.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", s.out_path, "write output to this file instead of stdout");
  app.add_flag("--dump-config", dump, "print the effective parameters and exit");

  CLI::App* steady = app.add_subcommand("steady", "steady state at a single distance");
  std::string sweep_variable = "r", sweep_grid = "1:6:1200";
  bool cross_check = false;
  CLI::App* sweep = app.add_subcommand("sweep", "sweep one parameter over a grid");
  sweep->add_option("--variable", sweep_variable, "r, omega1, omega2, delta1 or delta2");
  sweep->add_option("--grid", sweep_grid, "grid as lo:hi:count");
  sweep->add_flag("--cross-check", cross_check,
                  "add the Liouvillian steady-state p3 column");
  std::string preset_name;
  CLI::App* preset = app.add_subcommand("preset", "canned figure-reproduction sweeps");
  preset->add_option("name", preset_name, "fig4, fig5 or fig6")->required();
  CLI::App* saturation =
      app.add_subcommand("saturation", "fringe amplitude at and above saturation");
  bool mutate = false;
  CLI::App* verify = app.add_subcommand("verify", "run all built-in cross-checks");
  verify->add_flag("--mutate-gamma-sign", mutate,
                   "corrupt the closed form first (the checks must then fail)");

  try {
    app.parse(argc, argv);
    apply_config_file(app, s);
    if (dump) {
      dump_config(s);
      return 0;
    }
    if (steady->parsed()) return run_steady(s);
    if (sweep->parsed()) return run_sweep_cmd(s, sweep_variable, sweep_grid, cross_check);
    if (preset->parsed()) return run_preset(s, preset_name);
    if (saturation->parsed()) return run_saturation(app, s);
    if (verify->parsed()) return run_verify(s, mutate);
    std::cerr << app.help();
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help is a success; any parse failure is input error
  } catch (const mirrorsim::SimError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 2;
  }
}
