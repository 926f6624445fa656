#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zetalab {

enum class Errc {
  NotPrime,
  DegreeZero,
  IncompatibleFields,
  FieldMismatch,
  MixedCyclotomicOrder,
  BudgetExceeded,
  NonHomogeneous,
  ProjectiveWithNonzeroF,
  TallyTooShallow,
  RouteMismatch,
  NonIntegralCoefficient,
  CoefficientMismatch,
  NoCandidate,
  InsufficientOrder,
  OrderMismatch,
  NonIntegralResult,
  NonSquare,
  UnverifiedCandidate,
  Mismatch,
  ZeroVector,
  ZeroInput,
  InsufficientSamples,
  PoorFit,
  NotASubvariety,
  PrefixTooShort,
  Uncovered,
  DoubleCovered,
  TotalMismatch,
  NoStrictDrop,
  BaseMismatch,
  NonzeroRealization,
  MissingBaseMap,
  IncompleteTable,
  NotASubgroup,
  ParseError,
  IoError,
  Usage,
};

std::string_view errc_name(Errc code) noexcept;

/// Library-wide exception. `code()` identifies the failure class; the message
/// carries the context (and, for checks, the witness).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace zetalab
