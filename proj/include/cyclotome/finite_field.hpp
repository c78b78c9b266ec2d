#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cyclotome {

// Base-p packing sum c_i p^i of the polynomial-basis coefficients.
using Code = std::uint32_t;

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 25;
inline constexpr std::uint64_t kDefaultSeed = 0x5eed;

class FiniteField;

// An element tagged with the field it lives in.
struct FieldElement {
  const FiniteField* field = nullptr;
  Code code = 0;

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field == b.field && a.code == b.code;
  }
};

FieldElement operator+(FieldElement a, FieldElement b);
FieldElement operator-(FieldElement a, FieldElement b);
FieldElement operator-(FieldElement a);
FieldElement operator*(FieldElement a, FieldElement b);

/// F_{p^f} in a polynomial basis with a fixed primitive element gamma and
/// full exponential / discrete-log tables.
///
/// The modulus is drawn by a seeded random search for a monic irreducible
/// polynomial such that some gamma = x + c is primitive; the smallest such c
/// is used. Instances are immutable once built.
class FiniteField {
 public:
  std::uint32_t p() const noexcept { return p_; }
  unsigned degree() const noexcept { return f_; }
  std::uint64_t order() const noexcept { return q_; }
  std::uint64_t seed() const noexcept { return seed_; }
  bool orientation_flipped() const noexcept { return flipped_; }
  // Coefficients low to high, length degree()+1, leading coefficient 1.
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  Code gamma() const noexcept { return exp_[q_ > 2 ? 1 : 0]; }

  std::span<const Code> exp_table() const noexcept { return exp_; }
  std::span<const std::uint32_t> dlog_table() const noexcept { return dlog_; }

  FieldElement element(Code code) const;
  FieldElement one() const { return element(1); }
  FieldElement generator() const { return element(gamma()); }

  Code exp(std::int64_t k) const noexcept;
  std::uint32_t dlog(Code x) const;  // throws ZeroElement

  Code add(Code a, Code b) const noexcept;
  Code sub(Code a, Code b) const noexcept;
  Code neg(Code a) const noexcept;
  Code mul(Code a, Code b) const noexcept;
  Code inv(Code a) const;
  Code pow(Code a, std::int64_t e) const;

  std::uint32_t trace(Code x) const noexcept;
  std::uint64_t element_order(Code x) const;

  // Base-p digits (polynomial coefficients) of a code, and back.
  std::vector<std::uint32_t> digits(Code x) const;
  Code from_digits(std::span<const std::uint32_t> digits) const;

  bool same_tables(const FiniteField& other) const noexcept {
    return p_ == other.p_ && f_ == other.f_ && exp_ == other.exp_ && dlog_ == other.dlog_;
  }

 private:
  friend FiniteField build_field(std::uint32_t, unsigned, std::uint64_t, std::uint64_t);
  friend FiniteField field_from_modulus(std::uint32_t, unsigned, std::vector<std::uint32_t>,
                                        std::uint64_t, bool, std::uint64_t);
  friend FiniteField invert_generator(const FiniteField&);

  FiniteField() = default;
  bool try_tables(std::uint32_t c);
  void finish();

  std::uint32_t p_ = 0;
  unsigned f_ = 0;
  std::uint64_t q_ = 0;
  std::uint64_t seed_ = 0;
  bool flipped_ = false;
  std::vector<std::uint32_t> modulus_;
  std::vector<Code> exp_;
  std::vector<std::uint32_t> dlog_;
  std::vector<std::uint32_t> basis_trace_;
  std::vector<std::uint64_t> place_;  // p^i
};

// Throws NotPrime or BudgetExceeded (p^f > budget).
FiniteField build_field(std::uint32_t p, unsigned f, std::uint64_t budget = kDefaultBudget,
                        std::uint64_t seed = kDefaultSeed);

// Rebuilds a serialized field. The modulus is re-checked for irreducibility;
// gamma is re-derived deterministically and inverted when `flipped` is set.
FiniteField field_from_modulus(std::uint32_t p, unsigned f, std::vector<std::uint32_t> modulus,
                               std::uint64_t seed, bool flipped,
                               std::uint64_t budget = kDefaultBudget);

// Same field with gamma replaced by gamma^{-1}; tables rebuilt, flag toggled.
FiniteField invert_generator(const FiniteField& field);

std::uint32_t trace(FieldElement x);
std::uint32_t dlog(FieldElement x);
std::uint64_t element_order(FieldElement x);

}  // namespace cyclotome
