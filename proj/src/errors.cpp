#include "mirrorsim/errors.hpp"

namespace mirrorsim {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NonPositiveRate: return "NonPositiveRate";
    case Errc::NonFinite: return "NonFinite";
    case Errc::NegativeRabi: return "NegativeRabi";
    case Errc::NonPositiveDistance: return "NonPositiveDistance";
    case Errc::InvalidLens: return "InvalidLens";
    case Errc::GridTooCoarse: return "GridTooCoarse";
    case Errc::DegenerateDenominator: return "DegenerateDenominator";
    case Errc::ZeroDriving: return "ZeroDriving";
    case Errc::ZeroDetuning: return "ZeroDetuning";
    case Errc::InsufficientSamples: return "InsufficientSamples";
    case Errc::StepTooLarge: return "StepTooLarge";
    case Errc::DegenerateNullSpace: return "DegenerateNullSpace";
    case Errc::CalibrationAmbiguous: return "CalibrationAmbiguous";
    case Errc::NonPositiveSeparation: return "NonPositiveSeparation";
    case Errc::FlatCurve: return "FlatCurve";
    case Errc::InvalidSweep: return "InvalidSweep";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::IoFailure: return "IoFailure";
  }
  return "UnknownError";
}

SimError::SimError(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message),
      code_(code) {}

void fail(Errc code, const std::string& message) {
  throw SimError(code, message);
}

}  // namespace mirrorsim
