#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pfl {

enum class ErrorKind {
  DivisionByZeroOrNonUnit,
  DescriptorMismatch,
  UnsupportedField,
  FieldMismatch,
  NotInValuationRing,
  InconsistentConstraints,
  PreconditionFailed,
  ArityMismatch,
  DyadicResidue,
  UnsupportedValuation,
  UnnormalizedASSlot,
  ReciprocityViolation,
  UnsupportedCombination,
  UnresolvedBoundary,
  UnsupportedCoefficientShape,
  SearchBudgetExceeded,
  EmptyResidueChoice,
  SyntaxError,
  UnboundVariable,
  UsageError,
  ConsistencyViolation,
};

std::string_view to_string(ErrorKind kind);

// Every library failure is reported through this type; kind() is stable and
// is what the CLI prints as the error tag.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace pfl
