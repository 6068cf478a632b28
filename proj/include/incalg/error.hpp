#pragma once

#include <stdexcept>
#include <string>

namespace incalg {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  NotInvertible,
  IncompatibleOperands,
  NotComparable,
  NotConvex,
  NotConnected,
  InfiniteNeighborhood,
  LocalFinitenessBudgetExceeded,
  OverlappingAugmentation,
  HypothesisViolation,
  RingBooleanPartTooLarge,
  NotIdempotent,
  NotInDiagonalSupport,
  PosetRequired,
  SearchBudgetExceeded,
  NotOrderPreserving,
  NotConvexImage,
  NotFcc,
  NotComposable,
  NotParallel,
  NotIrreducible,
  NoValidCutPair,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }
  const char* name() const { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace incalg
