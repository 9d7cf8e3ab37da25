#include "pfisterlab/error.hpp"

namespace pfl {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZeroOrNonUnit: return "DivisionByZeroOrNonUnit";
    case ErrorKind::DescriptorMismatch: return "DescriptorMismatch";
    case ErrorKind::UnsupportedField: return "UnsupportedField";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::NotInValuationRing: return "NotInValuationRing";
    case ErrorKind::InconsistentConstraints: return "InconsistentConstraints";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::DyadicResidue: return "DyadicResidue";
    case ErrorKind::UnsupportedValuation: return "UnsupportedValuation";
    case ErrorKind::UnnormalizedASSlot: return "UnnormalizedASSlot";
    case ErrorKind::ReciprocityViolation: return "ReciprocityViolation";
    case ErrorKind::UnsupportedCombination: return "UnsupportedCombination";
    case ErrorKind::UnresolvedBoundary: return "UnresolvedBoundary";
    case ErrorKind::UnsupportedCoefficientShape: return "UnsupportedCoefficientShape";
    case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorKind::EmptyResidueChoice: return "EmptyResidueChoice";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::UsageError: return "UsageError";
    case ErrorKind::ConsistencyViolation: return "ConsistencyViolation";
  }
  return "Unknown";
}

}  // namespace pfl
