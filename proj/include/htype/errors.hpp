#pragma once

#include <stdexcept>
#include <string>

namespace htype {

enum class Errc {
  DimensionConstraint,
  NoCliffordModule,
  DimensionMismatch,
  NonpositiveScale,
  GridTooCoarse,
  NegativeArgument,
  ResolutionInsufficient,
  CutoffTooLarge,
  GridMismatch,
  NonFiniteMultiplier,
  NegativeTime,
  BandOutOfRange,
  IncompatibleGrids,
  AliasingWindowExceeded,
  ZeroTime,
  ZeroDenominator,
  SupportViolation,
  OutOfRange,
  BothInfinite,
  InvalidAlpha,
  NoPair,
  ZeroData,
  NotAdmissible,
  TimeOutOfRange,
  DivergenceDetected,
  ExponentRelationViolated,
  ConfigInvalid,
  IoError,
};

const char* errc_name(Errc c);

// Numerical-resolution errors map to CLI exit code 3, config errors to 2.
bool is_resolution_error(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace htype
