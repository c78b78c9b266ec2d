#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclotome/candidate_set.hpp"

namespace cyclotome {

enum class Verdict { SkewHDS, PaleyPDS, Neither };
enum class Method { BruteForce, CharacterSums, Both };

const char* verdict_name(Verdict v) noexcept;
const char* method_name(Method m) noexcept;

struct VerificationReport {
  Verdict verdict = Verdict::Neither;
  Method method = Method::BruteForce;
  std::uint64_t v = 0;
  std::uint64_t k = 0;
  std::optional<std::uint64_t> lambda;
  std::optional<std::uint64_t> mu;
  // Character method: max distance of psi(gamma^a D) from the nearest ideal value.
  std::optional<double> max_abs_deviation;
  // Brute force: extreme difference counts over nonzero elements.
  std::optional<std::uint32_t> histogram_min;
  std::optional<std::uint32_t> histogram_max;
  std::vector<int> sign_pattern;
  std::vector<std::string> warnings;
};

// Character verdicts flip only past this deviation; deviations above
// gauss_tolerance(q) but below it raise a warning.
double character_verdict_tolerance(std::uint64_t q) noexcept;

// 0 not in D, D and -D disjoint, |D| = (q-1)/2.
bool check_skew(const CandidateSet& set);
// 0 not in D and -D = D.
bool check_symmetric(const CandidateSet& set);

// Multiplicity of every x as d1 - d2 over ordered pairs of distinct d1, d2 in D,
// indexed by element code. Workers own contiguous slices of D and private
// histograms that are summed at the end, so the result does not depend on
// `threads`.
std::vector<std::uint32_t> difference_histogram(const CandidateSet& set, unsigned threads = 1);

VerificationReport verify_skew_hds_brute(const CandidateSet& set, unsigned threads = 1);
// Throws PreconditionFailed unless q = 1 (mod 4).
VerificationReport verify_paley_pds_brute(const CandidateSet& set, unsigned threads = 1);
// Throws SchemeMismatch unless D is a union of classes of its scheme.
VerificationReport verify_by_characters(const CandidateSet& set);

// Brute force picks the skew or PDS test by q mod 4; Both requires agreement.
VerificationReport verify(const CandidateSet& set, Method method, unsigned threads = 1);

struct SignPatternReport {
  std::vector<std::uint32_t> i_a;
  std::vector<std::uint32_t> j_a;
  std::vector<int> predicted;  // (-1)^{m + j_a}
  std::vector<int> observed;   // sign of Im psi(gamma^a D)
  int global_constant = 0;     // observed = global_constant * predicted, for every a
};

// For a case-A set with p = 3 (mod 4). Throws PatternMismatch when no single
// global constant relates the prediction to the computed signs.
SignPatternReport sign_pattern_check(const CandidateSet& set);

}  // namespace cyclotome
