#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wtangle {

enum class ErrorCode {
  NonSquare,
  NotHermitian,
  NotDensityLike,
  NumericalInstability,
  DimensionMismatch,
  NonFinite,
  InvalidQubitCount,
  NormViolation,
  LengthMismatch,
  CapExceeded,
  IndexError,
  NotPositive,
  NotPure,
  WrongQubitCount,
  InvalidZ,
  EmptySequence,
  CoherencesNotZero,
  SylvesterViolation,
  NegativeWeight,
  InvalidConfig,
  StrengthOutOfRange,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotDensityLike: return "NotDensityLike";
    case ErrorCode::NumericalInstability: return "NumericalInstability";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::InvalidQubitCount: return "InvalidQubitCount";
    case ErrorCode::NormViolation: return "NormViolation";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::IndexError: return "IndexError";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::WrongQubitCount: return "WrongQubitCount";
    case ErrorCode::InvalidZ: return "InvalidZ";
    case ErrorCode::EmptySequence: return "EmptySequence";
    case ErrorCode::CoherencesNotZero: return "CoherencesNotZero";
    case ErrorCode::SylvesterViolation: return "SylvesterViolation";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::StrengthOutOfRange: return "StrengthOutOfRange";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code
/// alongside the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace wtangle
