#pragma once

#include <cstdint>
#include <vector>

#include "cyclotome/candidate_set.hpp"
#include "cyclotome/numtheory.hpp"

namespace cyclotome {

// |I| = p1^m and the residues of I mod p1^m are pairwise distinct.
bool validate_transversal(const IndexSet& index_set, std::uint64_t p1, unsigned m);

// For each r < p1^m picks one of r, r + p1^m by a seeded coin flip.
IndexSet random_transversal(std::uint64_t p1, unsigned m, std::uint64_t seed);

/// D = union of C_i over a transversal I, in E = F_{q^s}, q = p^f.
///
/// For p = 3 (mod 4) the result is checked to be skew (-1 in C_{p1^m},
/// D and -D disjoint); for p = 1 (mod 4) it is checked to satisfy -D = D.
/// Throws EvenLift, BadIndexSet, BudgetExceeded or SkewPreconditionFailed.
CandidateSet construct_case_A(const CaseAParams& params, unsigned s, const IndexSet& index_set,
                              std::uint64_t budget = kDefaultBudget,
                              std::uint64_t seed = kDefaultSeed);

// The value 1 + 2 sum_{r in QR(p1)} gamma^{r n}, n = (q-1)/p1, as a field code.
Code orientation_sum(const FiniteField& field, std::uint64_t p1);

// Returns the field unchanged when the orientation sum is -1, and the field
// with gamma inverted when it is +1. Throws NormalizationImpossible otherwise.
FiniteField normalize_generator_case_B(const FiniteField& field, std::uint64_t p1);

// <p> u 2<p> u {0} as residues mod 2 p1.
IndexSet case_B_index_set(const CaseBParams& params);

CandidateSet construct_case_B(const CaseBParams& params, std::uint64_t budget = kDefaultBudget,
                              std::uint64_t seed = kDefaultSeed);

}  // namespace cyclotome
