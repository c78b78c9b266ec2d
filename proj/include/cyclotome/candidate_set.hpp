#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cyclotome/bitmask.hpp"
#include "cyclotome/cyclotomy.hpp"

namespace cyclotome {

struct CaseAProvenance {
  std::uint64_t p1 = 0;
  unsigned m = 0;
  std::uint64_t p = 0;
  unsigned s = 1;
  friend bool operator==(const CaseAProvenance&, const CaseAProvenance&) = default;
};

struct CaseBProvenance {
  std::uint64_t p1 = 0;
  std::uint64_t p = 0;
  unsigned h = 0;
  friend bool operator==(const CaseBProvenance&, const CaseBProvenance&) = default;
};

struct UserSupplied {
  friend bool operator==(const UserSupplied&, const UserSupplied&) = default;
};

using Provenance = std::variant<UserSupplied, CaseAProvenance, CaseBProvenance>;

std::string provenance_tag(const Provenance& provenance);

/// A subset D of F_q held as a membership bitmask over element codes.
///
/// Sets produced by the constructions (or by union_of_classes) are unions of
/// cyclotomic classes and carry their index set. A set built from an arbitrary
/// bitmask carries an index set only if it happens to be such a union.
class CandidateSet {
 public:
  CandidateSet(SchemePtr scheme, IndexSet index_set, Provenance provenance = UserSupplied{});

  static CandidateSet from_membership(SchemePtr scheme, Bitmask membership,
                                      Provenance provenance = UserSupplied{});

  const CyclotomicScheme& scheme() const noexcept { return *scheme_; }
  const SchemePtr& scheme_ptr() const noexcept { return scheme_; }
  const FiniteField& field() const noexcept { return scheme_->field(); }
  const std::optional<IndexSet>& index_set() const noexcept { return index_set_; }
  bool is_class_union() const noexcept { return index_set_.has_value(); }
  const Bitmask& membership() const noexcept { return membership_; }
  const Provenance& provenance() const noexcept { return provenance_; }

  bool contains(Code x) const noexcept { return membership_.test(x); }
  std::size_t size() const noexcept { return size_; }
  std::vector<Code> elements() const;

 private:
  CandidateSet() = default;

  SchemePtr scheme_;
  std::optional<IndexSet> index_set_;
  Bitmask membership_;
  Provenance provenance_;
  std::size_t size_ = 0;
};

// D = union of C_i over i in I; |D| = |I| (q-1)/N.
CandidateSet union_of_classes(SchemePtr scheme, const IndexSet& index_set,
                              Provenance provenance = UserSupplied{});

}  // namespace cyclotome
