// Physical parameters and unit conventions for the driven Lambda atom in
// front of a mirror.
//
// Unit conventions used throughout the library:
//   - every rate, Rabi frequency, detuning and level shift is an angular
//     frequency stored in rad/us (numerically "angular MHz");
//   - times are in us;
//   - the atom-mirror distance r is in units of the 3-1 transition
//     wavelength, and k31 in units of 2*pi per wavelength, so the physics
//     only ever sees the dimensionless product k31 * r.
// Only consistency matters: rescaling every frequency by a common factor
// leaves all populations unchanged.
#pragma once

#include <filesystem>
#include <map>
#include <numbers>
#include <string>

#include "mirrorsim/errors.hpp"

namespace mirrorsim {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Laser and atom constants of the three-level Lambda system: two ground
// states |1>, |2> coupled to the excited state |3> by one laser each.
struct AtomParams {
  double omega1 = 0.0;  // Rabi frequency of the laser on 3-1
  double omega2 = 0.0;  // Rabi frequency of the laser on 3-2
  double delta1 = 0.0;  // detuning of laser 1 from the 3-1 transition
  double delta2 = 0.0;  // detuning of laser 2 from the 3-2 transition
  double gamma1 = 1.0;  // free-space decay rate of channel 3 -> 1
  double gamma2 = 1.0;  // free-space decay rate of channel 3 -> 2
};

// Throws unless all invariants hold (positive decay rates, non-negative Rabi
// frequencies, everything finite); returns its argument for inline use.
AtomParams validate(const AtomParams& p);

// Mirror geometry. The mirror normal is x; the emitting dipole D31 lies
// parallel to the mirror surface (along z), the only geometry supported.
struct MirrorConfig {
  double r = 5.0;               // effective atom-mirror distance [lambda31]
  double k31 = kTwoPi;          // wavenumber of the 3-1 transition [2pi/lambda31]
  bool dipole_parallel = true;  // D31 parallel to the mirror

  double k31r() const { return k31 * r; }
};

MirrorConfig validate(const MirrorConfig& cfg);

// Projection optics: a lens at distance R from the mirror images the mirror
// plane near its focus.
struct LensGeometry {
  double f_mm;  // focal length [mm]
  double R_mm;  // mirror-lens distance [mm]
};

// Distance between the projected mirror image and the lens focus, f^2/R,
// returned in micrometers.
double effective_image_distance_um(const LensGeometry& g);

// Flat key=value parameter files ("omega1 = 10.0", '#' starts a comment).
// Returns all pairs in file order collapsed into a map; malformed lines throw
// InvalidConfig, unreadable files IoFailure.
std::map<std::string, double> read_key_value_file(const std::filesystem::path& path);

}  // namespace mirrorsim
