#include "mirrorsim/sweep.hpp"

#include <cfloat>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

namespace mirrorsim {

namespace {

constexpr const char* kToolTag = "mirrorsim 1.0.0";

// Full-precision, locale-independent formatting; 17 significant digits
// round-trip any double exactly.
std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

const char* sweep_variable_name(SweepVariable v) noexcept {
  switch (v) {
    case SweepVariable::r: return "r";
    case SweepVariable::omega1: return "omega1";
    case SweepVariable::omega2: return "omega2";
    case SweepVariable::delta1: return "delta1";
    case SweepVariable::delta2: return "delta2";
  }
  return "?";
}

std::vector<double> linspace(const GridSpec& grid) {
  if (!(std::isfinite(grid.lo) && std::isfinite(grid.hi)) || grid.count < 2 ||
      !(grid.lo < grid.hi)) {
    fail(Errc::InvalidSweep, "grid must satisfy lo < hi with count >= 2");
  }
  std::vector<double> values(grid.count);
  for (int i = 0; i < grid.count; ++i) {
    values[i] = grid.lo + (grid.hi - grid.lo) * (static_cast<double>(i) / (grid.count - 1));
  }
  return values;
}

namespace {

void check_detector(const Direction& d) {
  if (!(std::isfinite(d.theta) && std::isfinite(d.phi)) || d.theta < 0.0 ||
      d.theta > std::numbers::pi || d.phi < 0.0 || d.phi >= kTwoPi) {
    fail(Errc::InvalidSweep, "detector direction must have 0 <= theta <= pi, 0 <= phi < 2pi");
  }
}

const char* column_name(OutputColumn c) {
  switch (c) {
    case OutputColumn::p3: return "p3";
    case OutputColumn::i1: return "I1";
    case OutputColumn::i2: return "I2";
    case OutputColumn::gamma_bar_1: return "gamma_bar_1";
    case OutputColumn::shift: return "shift";
  }
  return "?";
}

const char* column_unit(OutputColumn c) {
  switch (c) {
    case OutputColumn::p3: return "";
    case OutputColumn::i1:
    case OutputColumn::i2: return "1e-2 MHz/sr";
    case OutputColumn::gamma_bar_1:
    case OutputColumn::shift: return "MHz";
  }
  return "";
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  validate(spec.params);
  validate(spec.mirror);
  check_detector(spec.detector);
  const std::vector<double> grid = linspace(spec.grid);
  const bool sweeps_r = spec.variable == SweepVariable::r;

  SweepResult result;
  result.metadata.emplace_back("tool", kToolTag);
  result.metadata.emplace_back("sweep", sweep_variable_name(spec.variable));
  result.metadata.emplace_back("grid", fmt17(spec.grid.lo) + ":" + fmt17(spec.grid.hi) +
                                           ":" + std::to_string(spec.grid.count));
  auto keep_fixed = [&](SweepVariable v, const char* name, double value) {
    if (spec.variable != v) result.metadata.emplace_back(name, fmt17(value));
  };
  keep_fixed(SweepVariable::omega1, "omega1", spec.params.omega1);
  keep_fixed(SweepVariable::omega2, "omega2", spec.params.omega2);
  keep_fixed(SweepVariable::delta1, "delta1", spec.params.delta1);
  keep_fixed(SweepVariable::delta2, "delta2", spec.params.delta2);
  result.metadata.emplace_back("gamma1", fmt17(spec.params.gamma1));
  result.metadata.emplace_back("gamma2", fmt17(spec.params.gamma2));
  keep_fixed(SweepVariable::r, "r", spec.mirror.r);
  result.metadata.emplace_back("k31", fmt17(spec.mirror.k31));
  result.metadata.emplace_back("detector_theta", fmt17(spec.detector.theta));
  result.metadata.emplace_back("detector_phi", fmt17(spec.detector.phi));
  result.metadata.emplace_back("frequency_unit", "angular MHz (rad/us)");
  result.metadata.emplace_back("intensity_unit", "1e-2 MHz/sr");
  result.metadata.emplace_back("distance_unit", "lambda31");

  int sign = +1;
  if (spec.cross_check) {
    sign = calibrated_detuning_sign();
    result.metadata.emplace_back("detuning_sign", sign > 0 ? "+1" : "-1");
  }

  // Grid columns first: the swept variable, plus the dimensionless k31*r for
  // distance sweeps (the natural axis for fringe analysis).
  result.columns.push_back(Column{
      sweep_variable_name(spec.variable), sweeps_r ? "lambda31" : "MHz", {}});
  if (sweeps_r) result.columns.push_back(Column{"k31r", "rad", {}});
  for (OutputColumn c : spec.outputs) {
    result.columns.push_back(Column{column_name(c), column_unit(c), {}});
  }
  if (spec.cross_check) result.columns.push_back(Column{"p3_liouvillian", "", {}});
  for (auto& column : result.columns) column.values.reserve(grid.size());

  for (double value : grid) {
    AtomParams pt = spec.params;
    MirrorConfig m = spec.mirror;
    switch (spec.variable) {
      case SweepVariable::r: m.r = value; break;
      case SweepVariable::omega1: pt.omega1 = value; break;
      case SweepVariable::omega2: pt.omega2 = value; break;
      case SweepVariable::delta1: pt.delta1 = value; break;
      case SweepVariable::delta2: pt.delta2 = value; break;
    }
    validate(pt);
    validate(m);

    const RadiativeCorrection rc = radiative_correction(m, pt);
    const double p3 = p3_closed_detail(pt, rc).value;

    std::size_t col = 0;
    result.columns[col++].values.push_back(value);
    if (sweeps_r) result.columns[col++].values.push_back(m.k31r());
    for (OutputColumn c : spec.outputs) {
      double out = 0.0;
      switch (c) {
        case OutputColumn::p3: out = p3; break;
        case OutputColumn::i1: out = 100.0 * intensity_1(spec.detector, p3, m, pt); break;
        case OutputColumn::i2: out = 100.0 * intensity_2(spec.detector, p3, pt); break;
        case OutputColumn::gamma_bar_1: out = rc.gamma_bar_1; break;
        case OutputColumn::shift: out = rc.shift; break;
      }
      if (!std::isfinite(out)) fail(Errc::NonFinite, "sweep produced a non-finite value");
      result.columns[col++].values.push_back(out);
    }
    if (spec.cross_check) {
      const DensityMatrix3 rho = steady_state(build_liouvillian(pt, rc, sign));
      result.columns[col++].values.push_back(rho.p3());
    }
  }
  return result;
}

namespace {

// Concatenates r sweeps taken at several values of a control parameter into
// one long-format table with the control value as the leading column.
SweepResult stack_r_sweeps(const std::string& control_name,
                           const std::vector<double>& control_values,
                           const std::function<SweepSpec(double)>& spec_at) {
  SweepResult stacked;
  bool first = true;
  for (double control : control_values) {
    SweepResult slice = run_sweep(spec_at(control));
    if (first) {
      stacked.metadata = std::move(slice.metadata);
      // The control parameter is no longer fixed; describe the slice set.
      std::erase_if(stacked.metadata,
                    [&](const auto& kv) { return kv.first == control_name; });
      std::string values;
      for (std::size_t i = 0; i < control_values.size(); ++i) {
        values += (i ? "," : "") + fmt17(control_values[i]);
      }
      stacked.metadata.emplace_back(control_name + "_values", values);
      for (auto& [key, value] : stacked.metadata) {
        if (key == "sweep") value = control_name + ",r";
      }
      stacked.columns.push_back(Column{control_name, "MHz", {}});
      for (auto& column : slice.columns) stacked.columns.push_back(std::move(column));
      stacked.columns[0].values.assign(stacked.columns[1].values.size(), control);
      first = false;
      continue;
    }
    stacked.columns[0].values.insert(stacked.columns[0].values.end(),
                                     slice.columns[0].values.size(), control);
    for (std::size_t c = 0; c < slice.columns.size(); ++c) {
      auto& dst = stacked.columns[c + 1].values;
      auto& src = slice.columns[c].values;
      dst.insert(dst.end(), src.begin(), src.end());
    }
  }
  return stacked;
}

}  // namespace

SweepSpec fig4_spec() {
  SweepSpec spec;
  spec.params = AtomParams{.omega1 = 10.0, .omega2 = 5.0, .delta1 = 2.0, .delta2 = 0.0,
                           .gamma1 = 15.1, .gamma2 = 5.4};
  spec.variable = SweepVariable::r;
  spec.grid = GridSpec{1.0, 6.0, 1200};
  return spec;
}

SweepResult preset_fig4() { return run_sweep(fig4_spec()); }

SweepResult preset_fig5() {
  return stack_r_sweeps("omega1", {2.5, 5.0, 10.0, 15.0, 20.0}, [](double omega1) {
    SweepSpec spec;
    spec.params = AtomParams{.omega1 = omega1, .omega2 = 10.0, .delta1 = 0.0,
                             .delta2 = 0.1, .gamma1 = 15.1, .gamma2 = 5.4};
    spec.variable = SweepVariable::r;
    spec.grid = GridSpec{1.0, 6.0, 1200};
    spec.outputs = {OutputColumn::p3, OutputColumn::i1};
    return spec;
  });
}

SweepResult preset_fig6() {
  // delta1 from -3.9 to 3.9 in 0.2 steps; the grid intentionally straddles
  // the two-photon resonance at delta1 = 0 without hitting it exactly (the
  // fringe phase is undefined on the dark point itself).
  std::vector<double> detunings(40);
  for (std::size_t i = 0; i < detunings.size(); ++i) {
    detunings[i] = -3.9 + 0.2 * static_cast<double>(i);
  }
  return stack_r_sweeps("delta1", detunings, [](double delta1) {
    SweepSpec spec;
    spec.params = AtomParams{.omega1 = 1.0, .omega2 = 10.0, .delta1 = delta1,
                             .delta2 = 0.0, .gamma1 = 15.1, .gamma2 = 5.4};
    spec.variable = SweepVariable::r;
    spec.grid = GridSpec{1.0, 6.0, 1200};
    spec.outputs = {OutputColumn::p3, OutputColumn::i1};
    return spec;
  });
}

namespace {

const Column& find_column(const SweepResult& result, const std::string& name) {
  for (const auto& column : result.columns) {
    if (column.name == name) return column;
  }
  throw std::invalid_argument("no column named '" + name + "' in sweep result");
}

}  // namespace

ModulationMetrics analyze_r_sweep(const SweepResult& result, const std::string& column) {
  const Column& x = find_column(result, "k31r");
  const Column& y = find_column(result, column);
  return modulation_metrics(x.values, y.values);
}

SaturationResult saturation_study(const AtomParams& base, const MirrorConfig& mirror,
                                  const GridSpec& omega1_scan) {
  validate(base);
  validate(mirror);
  if (!(omega1_scan.lo > 0.0)) {
    fail(Errc::InvalidSweep, "omega1 scan must start above 0");
  }

  const auto measure = [&](double omega1) {
    SweepSpec spec;
    spec.params = base;
    spec.params.omega1 = omega1;
    spec.mirror = mirror;
    spec.variable = SweepVariable::r;
    spec.grid = GridSpec{1.0, 6.0, 1200};
    spec.outputs = {OutputColumn::p3};
    const ModulationMetrics m = analyze_r_sweep(run_sweep(spec), "p3");
    return SaturationPoint{omega1, m.mean, m.amplitude};
  };

  SaturationResult result;
  const std::vector<double> omegas = linspace(omega1_scan);
  result.scan.reserve(omegas.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    result.scan.push_back(measure(omegas[i]));
    if (result.scan[i].amplitude > result.scan[best].amplitude) best = i;
  }

  const double best_amp = result.scan[best].amplitude;
  if (!(best_amp > 1e-12 * std::max(result.scan[best].mean_p3, DBL_MIN))) {
    fail(Errc::FlatCurve, "no fringe modulation anywhere in the omega1 scan");
  }

  // Parabolic refinement of the scan maximum when it is interior.
  double omega_sat = omegas[best];
  if (best > 0 && best + 1 < omegas.size()) {
    const double d1 = omegas[best] - omegas[best - 1];
    const double d2 = omegas[best + 1] - omegas[best];
    const double am = result.scan[best - 1].amplitude;
    const double a0 = result.scan[best].amplitude;
    const double ap = result.scan[best + 1].amplitude;
    const double denom = d1 * d2 * (d1 + d2);
    const double a = (d1 * (ap - a0) + d2 * (am - a0)) / denom;
    const double b = ((ap - a0) * d1 * d1 - (am - a0) * d2 * d2) / denom;
    if (a < 0.0) {
      omega_sat = std::clamp(omegas[best] - b / (2.0 * a), omegas[best - 1], omegas[best + 1]);
    }
  }

  result.omega_sat = omega_sat;
  result.amplitude_at_sat = measure(omega_sat).amplitude;
  result.amplitude_at_3x = measure(3.0 * omega_sat).amplitude;
  if (!(result.amplitude_at_3x > 0.0)) {
    fail(Errc::FlatCurve, "no fringe modulation at 3x the saturation point");
  }
  result.ratio = result.amplitude_at_sat / result.amplitude_at_3x;
  return result;
}

void write_csv(const SweepResult& result, std::ostream& out) {
  for (const auto& [key, value] : result.metadata) {
    out << "# " << key << " = " << value << "\n";
  }
  for (std::size_t c = 0; c < result.columns.size(); ++c) {
    if (c) out << ",";
    out << result.columns[c].name;
    if (!result.columns[c].unit.empty()) out << " [" << result.columns[c].unit << "]";
  }
  out << "\n";
  const std::size_t rows = result.columns.empty() ? 0 : result.columns[0].values.size();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t c = 0; c < result.columns.size(); ++c) {
      if (c) out << ",";
      out << fmt17(result.columns[c].values[i]);
    }
    out << "\n";
  }
}

void write_json(const SweepResult& result, std::ostream& out) {
  nlohmann::ordered_json j;
  j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : result.metadata) j["metadata"][key] = value;
  j["columns"] = nlohmann::ordered_json::array();
  for (const auto& column : result.columns) {
    nlohmann::ordered_json jc;
    jc["name"] = column.name;
    jc["unit"] = column.unit;
    jc["values"] = column.values;
    j["columns"].push_back(std::move(jc));
  }
  out << j.dump(2) << "\n";
}

std::string to_string(const SweepResult& result, EmitFormat format) {
  std::ostringstream out;
  format == EmitFormat::csv ? write_csv(result, out) : write_json(result, out);
  return out.str();
}

void emit(const SweepResult& result, EmitFormat format, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail(Errc::IoFailure, "cannot open " + path.string() + " for writing");
  format == EmitFormat::csv ? write_csv(result, out) : write_json(result, out);
  out.flush();
  if (!out) fail(Errc::IoFailure, "failed writing " + path.string());
}

}  // namespace mirrorsim
