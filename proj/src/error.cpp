#include "hesspair/error.hpp"

namespace hesspair {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidField: return "InvalidField";
    case ErrorCode::MixedFields: return "MixedFields";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::InfiniteField: return "InfiniteField";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::EigenvaluesOutsideField: return "EigenvaluesOutsideField";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotADecomposition: return "NotADecomposition";
    case ErrorCode::NotDiagonalizable: return "NotDiagonalizable";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::NotHessenberg: return "NotHessenberg";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::DDeltaMismatch: return "DDeltaMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::SplitInvalid: return "SplitInvalid";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::DuplicateEigenvalue: return "DuplicateEigenvalue";
    case ErrorCode::EmptyDims: return "EmptyDims";
    case ErrorCode::GenerationBudgetExceeded: return "GenerationBudgetExceeded";
    case ErrorCode::SingularConjugator: return "SingularConjugator";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::OracleDisagreement: return "OracleDisagreement";
    case ErrorCode::IrreducibilityUndetermined: return "IrreducibilityUndetermined";
  }
  return "Unknown";
}

}  // namespace hesspair
