// Collective decay of two dipole-coupled atoms, and the check that the
// mirror problem maps onto it: an atom at distance r from a mirror behaves
// (in channel 3->1) like the antisymmetric Dicke state of a real atom pair
// separated by 2r.
#pragma once

#include <span>
#include <vector>

#include "mirrorsim/params.hpp"

namespace mirrorsim {

// Two identical atoms separated by d, dipoles perpendicular to the
// separation axis (the only orientation supported).
struct AtomPairConfig {
  double d;  // separation [lambda]
  double k;  // transition wavenumber [2pi/lambda]
};

struct CollectiveRates {
  double gamma_sym;     // decay rate of the symmetric Dicke state
  double gamma_anti;    // decay rate of the antisymmetric Dicke state
  double dipole_shift;  // dipole-dipole energy shift of the pair states
};

// Rates gamma * (1 +- F(kd)) and the matching shift for perpendicular
// dipoles. Deliberately coded from spherical Bessel/Neumann functions with no
// helpers shared with the mirror-emission module, so agreement between the
// two is a genuine double-entry check, not a tautology.
CollectiveRates collective_rates(const AtomPairConfig& cfg, double gamma);

struct EquivalencePoint {
  double k31r;
  double rate_residual;   // |gamma_anti(2r) - gamma_bar_1(r)|
  double shift_residual;  // |dipole_shift(2r) - level_shift(r)|
};

struct EquivalenceReport {
  std::vector<EquivalencePoint> points;
  double max_rate_residual = 0.0;
  double max_shift_residual = 0.0;
  double tolerance = 0.0;  // 1e-12 * gamma1
  bool passed = false;
};

// Compares the mirror formulas at distance r against the pair formulas at
// separation 2r over the given distances (r, in wavelengths). The default
// grid covers 100 points across (0.05, 20) wavelengths.
EquivalenceReport verify_mirror_image(const MirrorConfig& cfg, double gamma1,
                                      std::span<const double> r_values);
EquivalenceReport verify_mirror_image(const MirrorConfig& cfg, double gamma1);

}  // namespace mirrorsim
