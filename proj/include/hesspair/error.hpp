#ifndef HESSPAIR_ERROR_HPP
#define HESSPAIR_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace hesspair {

enum class ErrorCode {
  InvalidArgument,
  InvalidField,
  MixedFields,
  DivisionByZero,
  InfiniteField,
  ParseError,
  AmbientMismatch,
  NotSquare,
  SizeMismatch,
  SingularMatrix,
  EigenvaluesOutsideField,
  LengthMismatch,
  NotADecomposition,
  NotDiagonalizable,
  SearchBudgetExceeded,
  NotHessenberg,
  NotIrreducible,
  DDeltaMismatch,
  ShapeMismatch,
  SplitInvalid,
  IndexOutOfRange,
  ZeroVector,
  DuplicateEigenvalue,
  EmptyDims,
  GenerationBudgetExceeded,
  SingularConjugator,
  VerificationFailed,
  OracleDisagreement,
  IrreducibilityUndetermined,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hesspair

#endif  // HESSPAIR_ERROR_HPP
