#include "edpadic/error.hpp"

namespace edpadic {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::InvalidContext: return "InvalidContext";
    case ErrorCode::NonUnit: return "NonUnit";
    case ErrorCode::NotASquare: return "NotASquare";
    case ErrorCode::ZeroResidue: return "ZeroResidue";
    case ErrorCode::BadPrime: return "BadPrime";
    case ErrorCode::NotReversible: return "NotReversible";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NotOnCurve: return "NotOnCurve";
    case ErrorCode::InternalNonUnimodular: return "InternalNonUnimodular";
    case ErrorCode::NoLift: return "NoLift";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::BadValuation: return "BadValuation";
    case ErrorCode::NotInKernel: return "NotInKernel";
    case ErrorCode::NonUnitDenominator: return "NonUnitDenominator";
    case ErrorCode::NonzeroDegree: return "NonzeroDegree";
    case ErrorCode::ClassMismatch: return "ClassMismatch";
    case ErrorCode::DSquare: return "DSquare";
    case ErrorCode::ExceptionalFiber: return "ExceptionalFiber";
    case ErrorCode::Anomalous: return "Anomalous";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

}  // namespace edpadic
