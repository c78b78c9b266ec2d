#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "cyclotome/finite_field.hpp"

namespace cyclotome {

/// Sorted, duplicate-free subset of Z/NZ.
class IndexSet {
 public:
  IndexSet() = default;
  // Sorts; throws BadIndexSet on duplicates or members outside [0, N).
  IndexSet(std::vector<std::uint32_t> members, std::uint32_t N);

  std::uint32_t modulus() const noexcept { return N_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(std::uint32_t i) const noexcept;
  const std::vector<std::uint32_t>& values() const noexcept { return members_; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<std::uint32_t> members_;
  std::uint32_t N_ = 0;
};

// Cyclotomic classes C_i = gamma^i <gamma^N> of a built field, together with
// the Gauss periods eta_i = sum over C_i of exp(2 pi i Tr(x)/p).
class CyclotomicScheme {
 public:
  const FiniteField& field() const noexcept { return *field_; }
  const std::shared_ptr<const FiniteField>& field_ptr() const noexcept { return field_; }
  std::uint32_t order() const noexcept { return N_; }
  std::uint64_t class_size() const noexcept { return (field_->order() - 1) / N_; }

  std::uint32_t class_of(Code x) const;  // throws ZeroElement
  std::uint32_t minus_one_class() const;  // throws EvenCharacteristic

  std::span<const std::complex<double>> periods() const noexcept { return periods_; }

  template <class Fn>
  void for_each_in_class(std::uint32_t i, Fn&& fn) const {
    const auto exps = field_->exp_table();
    for (std::size_t k = i % N_; k < exps.size(); k += N_) fn(exps[k]);
  }

 private:
  friend std::shared_ptr<const CyclotomicScheme> build_scheme(std::shared_ptr<const FiniteField>,
                                                              std::uint32_t);
  CyclotomicScheme() = default;

  std::shared_ptr<const FiniteField> field_;
  std::uint32_t N_ = 0;
  std::vector<std::complex<double>> periods_;
};

using SchemePtr = std::shared_ptr<const CyclotomicScheme>;

// Throws NotDivisor unless N > 1 and N | q - 1. Periods are filled eagerly in
// one pass over ascending discrete logs.
SchemePtr build_scheme(std::shared_ptr<const FiniteField> field, std::uint32_t N);

std::uint32_t class_of(const CyclotomicScheme& scheme, FieldElement x);
std::uint32_t minus_one_class(const CyclotomicScheme& scheme);
std::span<const std::complex<double>> gauss_periods(const CyclotomicScheme& scheme);

}  // namespace cyclotome
