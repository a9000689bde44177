#include "fracspec/error.hpp"

namespace fracspec {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SingularAngle: return "SingularAngle";
    case ErrorCode::UndersampledChirp: return "UndersampledChirp";
    case ErrorCode::NonPositiveScale: return "NonPositiveScale";
    case ErrorCode::MomentOrderTooHigh: return "MomentOrderTooHigh";
    case ErrorCode::NotAWavelet: return "NotAWavelet";
    case ErrorCode::DivergentAdmissibility: return "DivergentAdmissibility";
    case ErrorCode::ZeroAdmissibility: return "ZeroAdmissibility";
    case ErrorCode::DerivativeOrderTooHigh: return "DerivativeOrderTooHigh";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::MissingClosedFormFT: return "MissingClosedFormFT";
    case ErrorCode::PairingDiverged: return "PairingDiverged";
    case ErrorCode::DegenerateSequence: return "DegenerateSequence";
    case ErrorCode::AngleOutsideTheoremRange: return "AngleOutsideTheoremRange";
    case ErrorCode::InvalidExponent: return "InvalidExponent";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MalformedCSV: return "MalformedCSV";
    case ErrorCode::NonUniformGrid: return "NonUniformGrid";
    case ErrorCode::UnknownWindow: return "UnknownWindow";
  }
  return "Unknown";
}

}  // namespace fracspec
