#include "cyclotome/cyclotomy.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include "cyclotome/error.hpp"

namespace cyclotome {

IndexSet::IndexSet(std::vector<std::uint32_t> members, std::uint32_t N)
    : members_(std::move(members)), N_(N) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw Error(Errc::BadIndexSet, "index set contains duplicates");
  }
  if (!members_.empty() && members_.back() >= N) {
    throw Error(Errc::BadIndexSet, "index " + std::to_string(members_.back()) +
                                       " is outside [0, " + std::to_string(N) + ")");
  }
}

bool IndexSet::contains(std::uint32_t i) const noexcept {
  return std::binary_search(members_.begin(), members_.end(), i);
}

std::uint32_t CyclotomicScheme::class_of(Code x) const { return field_->dlog(x) % N_; }

std::uint32_t CyclotomicScheme::minus_one_class() const {
  if (field_->p() == 2) throw Error(Errc::EvenCharacteristic, "-1 = 1 in characteristic 2");
  return static_cast<std::uint32_t>(((field_->order() - 1) / 2) % N_);
}

SchemePtr build_scheme(std::shared_ptr<const FiniteField> field, std::uint32_t N) {
  const std::uint64_t qm1 = field->order() - 1;
  if (N < 2 || qm1 % N != 0) {
    throw Error(Errc::NotDivisor, "N = " + std::to_string(N) + " does not divide q - 1 = " +
                                      std::to_string(qm1) + " (or N < 2)");
  }
  std::shared_ptr<CyclotomicScheme> scheme(new CyclotomicScheme());
  scheme->field_ = std::move(field);
  scheme->N_ = N;

  const FiniteField& F = *scheme->field_;
  const std::uint32_t p = F.p();
  std::vector<std::complex<double>> root(p);
  for (std::uint32_t t = 0; t < p; ++t) root[t] = std::polar(1.0, 2.0 * std::numbers::pi * t / p);

  std::vector<std::complex<double>> periods(N, 0.0);
  const auto exps = F.exp_table();
  for (std::size_t k = 0; k < exps.size(); ++k) periods[k % N] += root[F.trace(exps[k])];
  scheme->periods_ = std::move(periods);
  return scheme;
}

std::uint32_t class_of(const CyclotomicScheme& scheme, FieldElement x) {
  if (x.field != &scheme.field()) throw Error(Errc::FieldMismatch, "element is not in the scheme's field");
  return scheme.class_of(x.code);
}

std::uint32_t minus_one_class(const CyclotomicScheme& scheme) { return scheme.minus_one_class(); }

std::span<const std::complex<double>> gauss_periods(const CyclotomicScheme& scheme) {
  return scheme.periods();
}

}  // namespace cyclotome
