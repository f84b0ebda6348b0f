#include "htype/errors.hpp"

namespace htype {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DimensionConstraint: return "DimensionConstraint";
    case Errc::NoCliffordModule: return "NoCliffordModule";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NonpositiveScale: return "NonpositiveScale";
    case Errc::GridTooCoarse: return "GridTooCoarse";
    case Errc::NegativeArgument: return "NegativeArgument";
    case Errc::ResolutionInsufficient: return "ResolutionInsufficient";
    case Errc::CutoffTooLarge: return "CutoffTooLarge";
    case Errc::GridMismatch: return "GridMismatch";
    case Errc::NonFiniteMultiplier: return "NonFiniteMultiplier";
    case Errc::NegativeTime: return "NegativeTime";
    case Errc::BandOutOfRange: return "BandOutOfRange";
    case Errc::IncompatibleGrids: return "IncompatibleGrids";
    case Errc::AliasingWindowExceeded: return "AliasingWindowExceeded";
    case Errc::ZeroTime: return "ZeroTime";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::SupportViolation: return "SupportViolation";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::BothInfinite: return "BothInfinite";
    case Errc::InvalidAlpha: return "InvalidAlpha";
    case Errc::NoPair: return "NoPair";
    case Errc::ZeroData: return "ZeroData";
    case Errc::NotAdmissible: return "NotAdmissible";
    case Errc::TimeOutOfRange: return "TimeOutOfRange";
    case Errc::DivergenceDetected: return "DivergenceDetected";
    case Errc::ExponentRelationViolated: return "ExponentRelationViolated";
    case Errc::ConfigInvalid: return "ConfigInvalid";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_resolution_error(Errc c) {
  switch (c) {
    case Errc::GridTooCoarse:
    case Errc::ResolutionInsufficient:
    case Errc::CutoffTooLarge:
    case Errc::BandOutOfRange:
    case Errc::AliasingWindowExceeded:
    case Errc::DivergenceDetected:
    case Errc::IncompatibleGrids:
    case Errc::GridMismatch:
      return true;
    default:
      return false;
  }
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace htype
