// Closed-form steady-state excited population P3 of the driven Lambda atom
// including the mirror-modified rates and level shift, plus its two limiting
// approximations (weak and large detuning).
#pragma once

#include "mirrorsim/mirror_emission.hpp"

namespace mirrorsim {

// Detunings as seen by the shifted excited state: dbar_j = delta_j - shift.
// Their difference equals delta1 - delta2 (the shift cancels), which is what
// makes the dark-state condition delta1 = delta2 independent of distance.
struct EffectiveDetunings {
  double dbar1;
  double dbar2;
};

EffectiveDetunings effective_detunings(const AtomParams& p, const RadiativeCorrection& rc);

struct P3Result {
  double value;  // steady-state population of |3>, in [0, 1/2]
  bool dark;     // denominator underflowed: dark state or no driving
};

// Exact steady-state excited population. The denominator groups terms that
// span many orders of magnitude across sweep ranges; they are summed by
// decreasing magnitude with compensation (see the implementation). When the
// denominator underflows (below 1e-30 in internal units) the population limit
// is 0 and the result is flagged dark instead of dividing.
P3Result p3_closed_detail(const AtomParams& p, const RadiativeCorrection& rc);

// Same value as a plain double; throws DegenerateDenominator on the dark
// flag. This is the convenience entry point when the caller knows the drive
// is nondegenerate.
double p3_closed(const AtomParams& p, const RadiativeCorrection& rc);

// Approximation for detunings much smaller than the Rabi frequencies:
//   4 (d1-d2)^2 O1^2 O2^2 / (O1^2+O2^2)^2 * (gb1+gb2) / (gb1 O2^2 + gb2 O1^2).
// Note the bare detuning difference: the level shift cancels out of it.
// Exactly r-independent when omega1 = omega2. Throws ZeroDriving when both
// Rabi frequencies vanish.
double p3_weak_detuning(const AtomParams& p, const RadiativeCorrection& rc);

// Approximation for detunings much larger than Rabi frequencies and rates:
//   (1/4) O1^2 O2^2 (gb1+gb2) / (dbar1^2 gb1 O2^2 + dbar2^2 gb2 O1^2).
// Throws ZeroDetuning when either effective detuning is exactly zero.
double p3_large_detuning(const AtomParams& p, const RadiativeCorrection& rc);

}  // namespace mirrorsim
