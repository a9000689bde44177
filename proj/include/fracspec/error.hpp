#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fracspec {

enum class ErrorCode {
  SingularAngle,
  UndersampledChirp,
  NonPositiveScale,
  MomentOrderTooHigh,
  NotAWavelet,
  DivergentAdmissibility,
  ZeroAdmissibility,
  DerivativeOrderTooHigh,
  GridTooCoarse,
  MissingClosedFormFT,
  PairingDiverged,
  DegenerateSequence,
  AngleOutsideTheoremRange,
  InvalidExponent,
  InvalidArgument,
  MalformedCSV,
  NonUniformGrid,
  UnknownWindow,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fracspec
