#include "zetalab/error.hpp"

namespace zetalab {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::DegreeZero: return "DegreeZero";
    case Errc::IncompatibleFields: return "IncompatibleFields";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::MixedCyclotomicOrder: return "MixedCyclotomicOrder";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::NonHomogeneous: return "NonHomogeneous";
    case Errc::ProjectiveWithNonzeroF: return "ProjectiveWithNonzeroF";
    case Errc::TallyTooShallow: return "TallyTooShallow";
    case Errc::RouteMismatch: return "RouteMismatch";
    case Errc::NonIntegralCoefficient: return "NonIntegralCoefficient";
    case Errc::CoefficientMismatch: return "CoefficientMismatch";
    case Errc::NoCandidate: return "NoCandidate";
    case Errc::InsufficientOrder: return "InsufficientOrder";
    case Errc::OrderMismatch: return "OrderMismatch";
    case Errc::NonIntegralResult: return "NonIntegralResult";
    case Errc::NonSquare: return "NonSquare";
    case Errc::UnverifiedCandidate: return "UnverifiedCandidate";
    case Errc::Mismatch: return "Mismatch";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::ZeroInput: return "ZeroInput";
    case Errc::InsufficientSamples: return "InsufficientSamples";
    case Errc::PoorFit: return "PoorFit";
    case Errc::NotASubvariety: return "NotASubvariety";
    case Errc::PrefixTooShort: return "PrefixTooShort";
    case Errc::Uncovered: return "Uncovered";
    case Errc::DoubleCovered: return "DoubleCovered";
    case Errc::TotalMismatch: return "TotalMismatch";
    case Errc::NoStrictDrop: return "NoStrictDrop";
    case Errc::BaseMismatch: return "BaseMismatch";
    case Errc::NonzeroRealization: return "NonzeroRealization";
    case Errc::MissingBaseMap: return "MissingBaseMap";
    case Errc::IncompleteTable: return "IncompleteTable";
    case Errc::NotASubgroup: return "NotASubgroup";
    case Errc::ParseError: return "ParseError";
    case Errc::IoError: return "IoError";
    case Errc::Usage: return "Usage";
  }
  return "Unknown";
}

}  // namespace zetalab
