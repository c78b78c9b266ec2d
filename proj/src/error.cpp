#include "cyclotome/error.hpp"

namespace cyclotome {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::ZeroElement: return "ZeroElement";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::BadResidue: return "BadResidue";
    case Errc::DegenerateResidue: return "DegenerateResidue";
    case Errc::Overflow: return "Overflow";
    case Errc::NotDivisor: return "NotDivisor";
    case Errc::EvenCharacteristic: return "EvenCharacteristic";
    case Errc::IdentityViolation: return "IdentityViolation";
    case Errc::NoSolution: return "NoSolution";
    case Errc::CaseMismatch: return "CaseMismatch";
    case Errc::ClosedFormMismatch: return "ClosedFormMismatch";
    case Errc::SchemeMismatch: return "SchemeMismatch";
    case Errc::EvenLift: return "EvenLift";
    case Errc::BadIndexSet: return "BadIndexSet";
    case Errc::SkewPreconditionFailed: return "SkewPreconditionFailed";
    case Errc::NormalizationImpossible: return "NormalizationImpossible";
    case Errc::ConditionViolated: return "ConditionViolated";
    case Errc::PatternMismatch: return "PatternMismatch";
    case Errc::PreconditionFailed: return "PreconditionFailed";
    case Errc::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

}  // namespace cyclotome
