// Parameter sweeps and their serialization: evaluate the closed-form
// steady state (optionally cross-checked against the master equation) over a
// grid of distance, Rabi frequency or detuning; figure presets; the
// saturation study; CSV/JSON emission.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "mirrorsim/master_equation.hpp"
#include "mirrorsim/modulation.hpp"

namespace mirrorsim {

enum class SweepVariable { r, omega1, omega2, delta1, delta2 };

const char* sweep_variable_name(SweepVariable v) noexcept;

enum class OutputColumn { p3, i1, i2, gamma_bar_1, shift };

struct GridSpec {
  double lo;
  double hi;
  int count;
};

std::vector<double> linspace(const GridSpec& grid);

struct SweepSpec {
  SweepVariable variable = SweepVariable::r;
  GridSpec grid{1.0, 6.0, 1200};  // default r grid: k31*r from 2pi to 12pi
  AtomParams params{};
  MirrorConfig mirror{};     // mirror.r is the fixed distance unless variable == r
  Direction detector{};      // default on-axis (theta = 0): angular factor 1
  std::vector<OutputColumn> outputs{OutputColumn::p3, OutputColumn::i1, OutputColumn::i2,
                                    OutputColumn::gamma_bar_1, OutputColumn::shift};
  bool cross_check = false;  // add a column with the Liouvillian steady-state p3
};

struct Column {
  std::string name;
  std::string unit;  // empty for dimensionless
  std::vector<double> values;
};

struct SweepResult {
  std::vector<std::pair<std::string, std::string>> metadata;  // ordered key/value
  std::vector<Column> columns;  // first column(s) hold the grid
};

// Evaluates one point per grid value. Intensities are reported in units of
// 1e-2 MHz/sr (the natural magnitude of the fringe signal). Any error from
// the physics modules aborts the sweep: partial results are never returned.
SweepResult run_sweep(const SweepSpec& spec);

// Figure presets.
//
// fig4: both emission channels vs distance for the asymmetrically driven atom
// (omega1=10, omega2=5, delta1=2, delta2=0): channel 1 fully modulated,
// channel 2 weakly, in antiphase.
SweepSpec fig4_spec();
SweepResult preset_fig4();

// fig5: P3 fringes vs distance for several omega1 around omega2 = 10 at
// nearly degenerate detunings (0 vs 0.1): fringes vanish at omega1 = omega2
// and return with the opposite phase on the other side.
SweepResult preset_fig5();

// fig6: P3 fringes vs distance as delta1 scans through the two-photon
// resonance at delta2 = 0 (omega1=1, omega2=10): the fringe phase advances
// continuously with delta1.
SweepResult preset_fig6();

// Modulation analysis of an r sweep: x = k31*r from the grid column, y = the
// named column.
ModulationMetrics analyze_r_sweep(const SweepResult& result, const std::string& column);

struct SaturationPoint {
  double omega1;
  double mean_p3;
  double amplitude;  // first-harmonic modulation amplitude of P3 over r
};

struct SaturationResult {
  double omega_sat;         // omega1 with the largest modulation amplitude
  double amplitude_at_sat;  // P3 modulation amplitude at omega_sat
  double amplitude_at_3x;   // ... and at 3*omega_sat
  double ratio;             // amplitude_at_sat / amplitude_at_3x
  std::vector<SaturationPoint> scan;
};

// Scans omega1 (default 0.1..12 in 120 steps), measuring the P3 fringe
// amplitude of an r sweep at each value; the saturation point is the
// amplitude maximum (parabolically refined). Throws FlatCurve when no
// modulation exists anywhere in the scan (e.g. equal detunings).
SaturationResult saturation_study(const AtomParams& base, const MirrorConfig& mirror,
                                  const GridSpec& omega1_scan = {0.1, 12.0, 120});

enum class EmitFormat { csv, json };

void write_csv(const SweepResult& result, std::ostream& out);
void write_json(const SweepResult& result, std::ostream& out);
std::string to_string(const SweepResult& result, EmitFormat format);

// Writes the result to a file; throws IoFailure when the file cannot be
// created or fully written. Identical results produce identical bytes.
void emit(const SweepResult& result, EmitFormat format, const std::filesystem::path& path);

}  // namespace mirrorsim
