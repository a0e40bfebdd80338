#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace graphon {

enum class ErrorCode {
  NonSquare,
  OutOfRange,
  AsymmetryTooLarge,
  BlockBoundaryMisaligned,
  BadParameters,
  InvalidGraph,
  InvalidPartition,
  LengthMismatch,
  ZeroFunction,
  NotConnected,
  NoConvergence,
  SizeTooLarge,
  EmptyPartition,
  TooLarge,
  ZeroFractionalMass,
  NotLoopless,
  GridMisaligned,
  DegreeFloorViolated,
  IoError,
  ParseError,
};

std::string_view error_name(ErrorCode code);

/// Thrown by every library operation whose precondition fails.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::AsymmetryTooLarge: return "AsymmetryTooLarge";
    case ErrorCode::BlockBoundaryMisaligned: return "BlockBoundaryMisaligned";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ZeroFunction: return "ZeroFunction";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SizeTooLarge: return "SizeTooLarge";
    case ErrorCode::EmptyPartition: return "EmptyPartition";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ZeroFractionalMass: return "ZeroFractionalMass";
    case ErrorCode::NotLoopless: return "NotLoopless";
    case ErrorCode::GridMisaligned: return "GridMisaligned";
    case ErrorCode::DegreeFloorViolated: return "DegreeFloorViolated";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace graphon
