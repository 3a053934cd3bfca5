#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sigsym {

enum class ErrorKind {
  NonPrimeCharacteristic,
  ReducibleModulus,
  FieldTooLarge,
  NotInvolution,
  FieldMismatch,
  SingularMatrix,
  SingularPivotBlock,
  IncompatibleScalingPair,
  SizeLimitExceeded,
  GroundMismatch,
  ZeroVector,
  NotLagrangian,
  NotSigmaEpsSymmetric,
  InvalidSupplementaryPair,
  NotEulerian,
  NotSpecialChain,
  NotLoopFree,
  OverlappingMinorSets,
  InvalidArgument,
  ParseError,
};

constexpr std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
    case ErrorKind::ReducibleModulus: return "ReducibleModulus";
    case ErrorKind::FieldTooLarge: return "FieldTooLarge";
    case ErrorKind::NotInvolution: return "NotInvolution";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::SingularPivotBlock: return "SingularPivotBlock";
    case ErrorKind::IncompatibleScalingPair: return "IncompatibleScalingPair";
    case ErrorKind::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorKind::GroundMismatch: return "GroundMismatch";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NotLagrangian: return "NotLagrangian";
    case ErrorKind::NotSigmaEpsSymmetric: return "NotSigmaEpsSymmetric";
    case ErrorKind::InvalidSupplementaryPair: return "InvalidSupplementaryPair";
    case ErrorKind::NotEulerian: return "NotEulerian";
    case ErrorKind::NotSpecialChain: return "NotSpecialChain";
    case ErrorKind::NotLoopFree: return "NotLoopFree";
    case ErrorKind::OverlappingMinorSets: return "OverlappingMinorSets";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Domain error carrying the name of the failed contract.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace sigsym
