#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace edpadic {

// Stable, machine-readable failure names. The CLI prints these verbatim.
enum class ErrorCode {
  ContextMismatch,
  InvalidContext,
  NonUnit,
  NotASquare,
  ZeroResidue,
  BadPrime,
  NotReversible,
  Singular,
  NotOnCurve,
  InternalNonUnimodular,
  NoLift,
  TooLarge,
  BadValuation,
  NotInKernel,
  NonUnitDenominator,
  NonzeroDegree,
  ClassMismatch,
  DSquare,
  ExceptionalFiber,
  Anomalous,
  ParseError,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace edpadic
