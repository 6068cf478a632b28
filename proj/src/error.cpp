#include "incalg/error.hpp"

namespace incalg {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::IncompatibleOperands: return "IncompatibleOperands";
    case ErrorCode::NotComparable: return "NotComparable";
    case ErrorCode::NotConvex: return "NotConvex";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::InfiniteNeighborhood: return "InfiniteNeighborhood";
    case ErrorCode::LocalFinitenessBudgetExceeded: return "LocalFinitenessBudgetExceeded";
    case ErrorCode::OverlappingAugmentation: return "OverlappingAugmentation";
    case ErrorCode::HypothesisViolation: return "HypothesisViolation";
    case ErrorCode::RingBooleanPartTooLarge: return "RingBooleanPartTooLarge";
    case ErrorCode::NotIdempotent: return "NotIdempotent";
    case ErrorCode::NotInDiagonalSupport: return "NotInDiagonalSupport";
    case ErrorCode::PosetRequired: return "PosetRequired";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::NotOrderPreserving: return "NotOrderPreserving";
    case ErrorCode::NotConvexImage: return "NotConvexImage";
    case ErrorCode::NotFcc: return "NotFcc";
    case ErrorCode::NotComposable: return "NotComposable";
    case ErrorCode::NotParallel: return "NotParallel";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::NoValidCutPair: return "NoValidCutPair";
  }
  return "Unknown";
}

}  // namespace incalg
