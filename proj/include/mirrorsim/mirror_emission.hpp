// Mirror-modified spontaneous emission of the Lambda atom: angular intensity
// distributions of both decay channels, the distance-dependent total decay
// rate of the mirror-coupled channel, the mirror-induced level shift of the
// excited state, and a spherical quadrature that ties the angular and total
// pictures together.
#pragma once

#include <vector>

#include "mirrorsim/params.hpp"

namespace mirrorsim {

// Emission direction. theta is the polar angle measured from the mirror
// normal x, phi the azimuth in the mirror plane measured from y towards z;
// the emitting dipoles point along z.
struct Direction {
  double theta = 0.0;  // [rad], 0 <= theta <= pi
  double phi = 0.0;    // [rad], 0 <= phi < 2*pi
};

// Mirror-induced modification of the excited state at one distance: the
// standing-wave pattern of channel 3->1 changes both its total decay rate and
// the energy of |3>, while channel 3->2 (different wavelength, averaged out)
// keeps its free-space rate.
struct RadiativeCorrection {
  double gamma_bar_1;  // modified total rate of channel 3->1, in [0, 2*gamma1]
  double gamma_bar_2;  // channel 3->2 rate; equals gamma2
  double shift;        // level shift of |3> (signed)
  double k31r;         // dimensionless distance these were evaluated at
};

// Relative modulation of the 3->1 decay rate,
//   1 - (3/2)(sin u / u + cos u / u^2 - sin u / u^3)  with u = 2*k31*r.
// Evaluated by a Taylor series below u = 1e-3 where the direct form loses
// all significant digits to cancellation; ranges over [0, 2].
double decay_modulation(double u);

// Distance profile of the level shift, cos u / u - sin u / u^2 - cos u / u^3.
// Diverges like -1/u^3 at contact; the full shift is (3*gamma1/4) times this.
double shift_profile(double u);

double gamma_bar_1(const MirrorConfig& cfg, double gamma1);
double level_shift(const MirrorConfig& cfg, double gamma1);

// Bundles gamma_bar_1, gamma_bar_2 and the shift for one (distance, atom)
// combination.
RadiativeCorrection radiative_correction(const MirrorConfig& cfg, const AtomParams& p);

// Angular emission density [MHz/sr] of channel 3->1 for excited population
// p3: (3*gamma1/4pi) * (1 - |D31_hat . k_hat|^2) * p3 * sin^2(k31*r*cos(theta)).
// The sin^2 factor is the standing wave formed with the mirror image.
double intensity_1(const Direction& dir, double p3, const MirrorConfig& cfg,
                   const AtomParams& p);

// Angular emission density of channel 3->2: (3*gamma2/8pi) * angular factor *
// p3. Carries no r dependence of its own (it varies with distance only
// through p3). The 3->2 dipole is taken parallel to D31.
double intensity_2(const Direction& dir, double p3, const AtomParams& p);

// Full-sphere integral of intensity_1 at p3 = 1 on a fixed product grid:
// Gauss-Legendre in cos(theta) x trapezoid in phi. Converges to
// gamma_bar_1(cfg, p.gamma1) as the grid refines. Grids below 8x8 are
// rejected (GridTooCoarse).
double quadrature_total_rate(const MirrorConfig& cfg, const AtomParams& p,
                             int n_theta, int n_phi);

// Same integral with automatic refinement: the grid doubles from 64x128 until
// two successive refinements agree to 1e-9 relative, capped at 1024x2048.
double quadrature_total_rate_adaptive(const MirrorConfig& cfg, const AtomParams& p);

// Gauss-Legendre nodes and weights on [-1, 1] (exposed for testing).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace mirrorsim
