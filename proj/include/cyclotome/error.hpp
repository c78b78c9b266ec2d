#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cyclotome {

enum class Errc {
  NotPrime,
  BudgetExceeded,
  ZeroElement,
  FieldMismatch,
  NotCoprime,
  BadResidue,
  DegenerateResidue,
  Overflow,
  NotDivisor,
  EvenCharacteristic,
  IdentityViolation,
  NoSolution,
  CaseMismatch,
  ClosedFormMismatch,
  SchemeMismatch,
  EvenLift,
  BadIndexSet,
  SkewPreconditionFailed,
  NormalizationImpossible,
  ConditionViolated,
  PatternMismatch,
  PreconditionFailed,
  InvalidInput,
};

std::string_view errc_name(Errc code) noexcept;

// Every library failure is reported through this type; code() identifies the
// failure class and what() carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace cyclotome
