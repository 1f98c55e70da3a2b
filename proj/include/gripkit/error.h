#pragma once

#include <stdexcept>
#include <string>

namespace gripkit {

enum class ErrorCode {
  kInvalidArgument,
  kConfigError,
  kParseError,
  kGeometryInfeasible,
  kNegativeY,
  kDenominatorNonpositive,
  kSynthesisFailed,
  kPoseUnsolvable,
  kOffsetExceedsRadius,
  kLpNumericalFailure,
  kCalibrationDiverged,
};

const char* to_string(ErrorCode code);

/// Exception carrying a machine-readable code; the message holds the location
/// (parameter value, row/column, curve parameter) that triggered it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kGeometryInfeasible: return "GeometryInfeasible";
    case ErrorCode::kNegativeY: return "NegativeY";
    case ErrorCode::kDenominatorNonpositive: return "DenominatorNonpositive";
    case ErrorCode::kSynthesisFailed: return "SynthesisFailed";
    case ErrorCode::kPoseUnsolvable: return "PoseUnsolvable";
    case ErrorCode::kOffsetExceedsRadius: return "OffsetExceedsRadius";
    case ErrorCode::kLpNumericalFailure: return "LpNumericalFailure";
    case ErrorCode::kCalibrationDiverged: return "CalibrationDiverged";
  }
  return "Unknown";
}

}  // namespace gripkit
