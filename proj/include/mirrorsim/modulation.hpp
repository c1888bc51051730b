// Quantitative description of interference fringes on a curve sampled against
// the dimensionless distance k31*r: visibility, refined extrema positions,
// and the first-harmonic amplitude and phase relative to the reference
// standing-wave pattern sin^2(k31*r).
#pragma once

#include <span>
#include <vector>

#include "mirrorsim/errors.hpp"

namespace mirrorsim {

struct ModulationMetrics {
  double mean;        // constant term of the harmonic fit
  double amplitude;   // first-harmonic amplitude at frequency 2 in k31*r
  double phase;       // phase offset vs sin^2(k31*r), in (-pi, pi]; 0 for pure sin^2
  bool phase_defined; // false when the amplitude sits at the numerical noise floor
  double visibility;  // (max - min)/(max + min) of the raw samples
  std::vector<double> maxima;  // extrema positions in k31*r, refined by local
  std::vector<double> minima;  // quadratic interpolation through 3 points
};

// Fits y ~= mean + a cos(2x) + b sin(2x) by least squares (the fringe period
// in x = k31*r is pi), locates local extrema, and reports visibility of the
// raw samples. The harmonic projection, not extrema spacing, carries the
// phase: it stays robust against the slowly varying 1/u envelopes of the
// mirror-modified rate and shift.
//
// Requires at least two full fringe periods (span >= 2*pi) sampled with at
// least 64 points per period; throws InsufficientSamples otherwise. The phase
// of an (almost) unmodulated curve is meaningless and gets flagged via
// phase_defined = false.
ModulationMetrics modulation_metrics(std::span<const double> k31r,
                                     std::span<const double> y);

// Shortest signed distance from angle a to angle b on the circle, in
// (-pi, pi]. Shared by the phase-continuity and phase-flip analyses.
double wrap_angle(double a);

}  // namespace mirrorsim
