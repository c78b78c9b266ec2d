#include "cyclotome/construct.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "cyclotome/error.hpp"

namespace cyclotome {

bool validate_transversal(const IndexSet& index_set, std::uint64_t p1, unsigned m) {
  std::uint64_t modulus = 1;
  for (unsigned i = 0; i < m; ++i) modulus *= p1;
  if (index_set.size() != modulus) return false;
  std::vector<bool> seen(modulus, false);
  for (auto i : index_set) {
    const auto r = i % modulus;
    if (seen[r]) return false;
    seen[r] = true;
  }
  return true;
}

IndexSet random_transversal(std::uint64_t p1, unsigned m, std::uint64_t seed) {
  std::uint64_t half = 1;
  for (unsigned i = 0; i < m; ++i) half *= p1;
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> members;
  members.reserve(half);
  for (std::uint64_t r = 0; r < half; ++r) {
    members.push_back(static_cast<std::uint32_t>((rng() & 1u) ? r + half : r));
  }
  return IndexSet(std::move(members), static_cast<std::uint32_t>(2 * half));
}

namespace {

bool is_symmetric(const CandidateSet& D) {
  const FiniteField& F = D.field();
  for (Code x = 1; x < F.order(); ++x) {
    if (D.contains(x) != D.contains(F.neg(x))) return false;
  }
  return true;
}

bool meets_negation(const CandidateSet& D) {
  const FiniteField& F = D.field();
  for (Code x = 1; x < F.order(); ++x) {
    if (D.contains(x) && D.contains(F.neg(x))) return true;
  }
  return false;
}

std::uint32_t checked_u32(std::uint64_t v, const char* what) {
  if (v > UINT32_MAX) throw Error(Errc::BudgetExceeded, std::string(what) + " exceeds 32 bits");
  return static_cast<std::uint32_t>(v);
}

}  // namespace

CandidateSet construct_case_A(const CaseAParams& params, unsigned s, const IndexSet& index_set,
                              std::uint64_t budget, std::uint64_t seed) {
  if (s % 2 == 0) throw Error(Errc::EvenLift, "the lift degree s must be odd, got " + std::to_string(s));
  const std::uint64_t N = params.N();
  if (index_set.modulus() != N || !validate_transversal(index_set, params.p1, params.m)) {
    throw Error(Errc::BadIndexSet, "I does not reduce onto Z/" + std::to_string(params.p1_power()) + "Z");
  }
  const auto degree = params.f * s;
  if (degree > 64) throw Error(Errc::BudgetExceeded, "extension degree too large");
  auto field = std::make_shared<const FiniteField>(
      build_field(checked_u32(params.p, "p"), static_cast<unsigned>(degree), budget, seed));
  auto scheme = build_scheme(field, checked_u32(N, "N"));
  CandidateSet D = union_of_classes(
      scheme, index_set, CaseAProvenance{params.p1, params.m, params.p, s});

  if (params.p % 4 == 3) {
    if (scheme->minus_one_class() != params.p1_power()) {
      throw Error(Errc::SkewPreconditionFailed, "-1 is not in C_{p1^m}");
    }
    if (meets_negation(D)) throw Error(Errc::SkewPreconditionFailed, "D meets -D");
  } else if (!is_symmetric(D)) {
    throw Error(Errc::SkewPreconditionFailed, "-D != D in the p = 1 (mod 4) branch");
  }
  return D;
}

Code orientation_sum(const FiniteField& F, std::uint64_t p1) {
  const std::uint64_t qm1 = F.order() - 1;
  if (qm1 % p1 != 0) throw Error(Errc::NotDivisor, "p1 does not divide q - 1");
  const std::uint64_t n = qm1 / p1;
  std::set<std::uint64_t> squares;
  for (std::uint64_t x = 1; x < p1; ++x) squares.insert(x * x % p1);
  Code sum = 0;
  for (auto r : squares) sum = F.add(sum, F.exp(static_cast<std::int64_t>(r * n)));
  return F.add(1, F.add(sum, sum));
}

FiniteField normalize_generator_case_B(const FiniteField& field, std::uint64_t p1) {
  const Code S = orientation_sum(field, p1);
  if (S == field.neg(1)) return field;
  if (S == 1) return invert_generator(field);
  throw Error(Errc::NormalizationImpossible,
              "1 + 2 sum gamma^{rn} is neither 1 nor -1 (code " + std::to_string(S) + ")");
}

IndexSet case_B_index_set(const CaseBParams& params) {
  const std::uint64_t N = params.N();
  std::vector<std::uint64_t> subgroup;
  std::uint64_t x = 1;
  do {
    subgroup.push_back(x);
    x = x * params.p % N;
  } while (x != 1);

  // <p> mod p1 must be exactly the nonzero squares mod p1.
  std::set<std::uint64_t> reduced, squares;
  for (auto u : subgroup) reduced.insert(u % params.p1);
  for (std::uint64_t y = 1; y < params.p1; ++y) squares.insert(y * y % params.p1);
  if (reduced != squares) {
    throw Error(Errc::ConditionViolated, "<p> mod p1 is not the set of nonzero squares");
  }

  std::set<std::uint32_t> members{0};
  for (auto u : subgroup) {
    members.insert(static_cast<std::uint32_t>(u));
    members.insert(static_cast<std::uint32_t>(2 * u % N));
  }
  IndexSet I(std::vector<std::uint32_t>(members.begin(), members.end()), static_cast<std::uint32_t>(N));
  if (I.size() != params.p1) throw Error(Errc::ConditionViolated, "|I| != p1");
  return I;
}

CandidateSet construct_case_B(const CaseBParams& params, std::uint64_t budget, std::uint64_t seed) {
  // Re-validate so hand-assembled params cannot bypass the conditions.
  const CaseBParams checked = CaseBParams::make(params.p1, params.p);
  const IndexSet I = case_B_index_set(checked);
  if (checked.f > 64) throw Error(Errc::BudgetExceeded, "extension degree too large");
  const FiniteField raw = build_field(checked_u32(checked.p, "p"), static_cast<unsigned>(checked.f), budget, seed);
  auto field = std::make_shared<const FiniteField>(normalize_generator_case_B(raw, checked.p1));
  auto scheme = build_scheme(field, checked_u32(checked.N(), "N"));
  return union_of_classes(scheme, I, CaseBProvenance{checked.p1, checked.p, checked.h});
}

}  // namespace cyclotome
