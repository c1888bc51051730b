// Error taxonomy shared by the whole library. Every recoverable failure is
// reported as a SimError carrying a category code, so callers (and the CLI)
// can distinguish bad input from numerical degeneracies without string
// matching.
#pragma once

#include <stdexcept>
#include <string>

namespace mirrorsim {

enum class Errc {
  NonPositiveRate,        // a decay rate that must be positive is <= 0
  NonFinite,              // NaN or infinity in an input
  NegativeRabi,           // Rabi frequencies are magnitudes, must be >= 0
  NonPositiveDistance,    // distance or wavenumber <= 0
  InvalidLens,            // lens geometry violates R > f
  GridTooCoarse,          // quadrature grid below the supported minimum
  DegenerateDenominator,  // closed-form denominator underflowed (dark state)
  ZeroDriving,            // both Rabi frequencies zero where driving is required
  ZeroDetuning,           // effective detuning zero where the formula divides by it
  InsufficientSamples,    // curve too short or too sparse for modulation analysis
  StepTooLarge,           // integrator step exceeds the stability budget
  DegenerateNullSpace,    // Liouvillian has more than one stationary state
  CalibrationAmbiguous,   // detuning-sign calibration point cannot discriminate
  NonPositiveSeparation,  // two-atom separation <= 0
  FlatCurve,              // no modulation found where a modulated curve is required
  InvalidSweep,           // malformed sweep specification
  InvalidConfig,          // malformed configuration input
  IoFailure,              // file could not be read or written
};

// Stable identifier for a code, e.g. "NonPositiveRate". Used in messages and
// machine-readable reports.
const char* errc_name(Errc code) noexcept;

class SimError : public std::runtime_error {
 public:
  SimError(Errc code, const std::string& message);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Convenience for one-line guard clauses.
[[noreturn]] void fail(Errc code, const std::string& message);

}  // namespace mirrorsim
