#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "cyclotome/candidate_set.hpp"
#include "cyclotome/cyclotomy.hpp"
#include "cyclotome/numtheory.hpp"

namespace cyclotome {

// Gauss sums are taken against the multiplicative character chi with
// chi(gamma) = exp(2 pi i / N) and the canonical additive character
// psi(x) = exp(2 pi i Tr(x) / p). Square roots of negative integers use the
// branch sqrt(-n) = i sqrt(n).

enum class PredictionCase { None, Index2_7mod8, Index2_3mod8, Quadratic };

const char* prediction_case_name(PredictionCase c) noexcept;

struct GaussSumRecord {
  std::uint32_t j = 0;
  std::complex<double> value;
  double abs_error_bound = 0.0;
  std::optional<std::complex<double>> prediction;
  PredictionCase prediction_case = PredictionCase::None;
};

// Comparison tolerance for Gauss-sum magnitudes of order sqrt(q).
double gauss_tolerance(std::uint64_t q) noexcept;

// g(chi^j) = sum_k exp(2 pi i j k / N) eta_k.
GaussSumRecord gauss_sum(const CyclotomicScheme& scheme, std::int64_t j);

struct IdentityReport {
  double norm_deviation = 0.0;       // max | |g(chi^j)| - sqrt(q) |, j != 0
  double frobenius_deviation = 0.0;  // max | g(chi^{pj}) - g(chi^j) |
  double conjugate_deviation = 0.0;  // max | g(chi^{-j}) - chi^j(-1) conj g(chi^j) |
  double trivial_deviation = 0.0;    // | g(chi^0) + 1 |
  double tolerance = 0.0;
};

// Throws IdentityViolation naming j and the deviation when any identity fails.
IdentityReport check_basic_identities(const CyclotomicScheme& scheme);

struct BCData {
  std::int64_t b = 0;
  std::vector<std::int64_t> c_candidates;
  unsigned h = 0;
  std::uint64_t p = 0;
  std::uint64_t p1 = 0;
  std::uint64_t f = 0;
};

// All (b, c) with b^2 + p1 c^2 = 4 p^h, b, c != 0 (mod p) and
// b p^{(f-h)/2} = -2 (mod p1). Throws NoSolution.
BCData solve_bc(std::uint64_t p1, std::uint64_t p, unsigned h, std::uint64_t f);

/// Everything the index-2 closed forms need, for N = 2 p1^m.
struct IndexTwoParams {
  std::uint64_t p1 = 0;
  unsigned m = 0;
  std::uint64_t p = 0;
  std::uint64_t f = 0;
  unsigned h = 0;
  std::optional<BCData> bc;
  PredictionCase kind = PredictionCase::None;

  std::uint64_t N() const;
  static IndexTwoParams from(const CaseAParams& params);
  static IndexTwoParams from(const CaseBParams& params);
};

enum class ExponentKind {
  Trivial,    // j = 0
  OddPower,   // chi^{p1^t}, 0 <= t < m (t = 0 is the generic order-N formula)
  EvenPower,  // chi^{2 p1^t}, 0 <= t < m
  Quadratic,  // chi^{p1^m}
};

const char* exponent_kind_name(ExponentKind k) noexcept;

struct ClosedFormValue {
  std::complex<double> value;
  std::int64_t c = 0;  // 0 when the formula does not involve c
};

// Predicted value(s) of g(chi^{base}) for the base exponent of `kind` and t.
// Throws CaseMismatch when the formula does not apply to these parameters.
std::vector<ClosedFormValue> closed_form_index2(const IndexTwoParams& params, ExponentKind kind,
                                                unsigned t);

struct ClosedFormRow {
  std::uint32_t j = 0;
  ExponentKind kind = ExponentKind::Trivial;
  unsigned t = 0;
  int epsilon = 1;  // j = epsilon p^r base (mod N)
  unsigned r = 0;
  std::complex<double> computed;
  std::optional<std::complex<double>> predicted;
  std::int64_t c = 0;
  double deviation = 0.0;
  bool matched = false;
};

struct ClosedFormReport {
  PredictionCase kind = PredictionCase::None;
  std::vector<ClosedFormRow> rows;
  std::int64_t c = 0;  // the single c (for chi) used by every c-dependent row
  bool all_matched = false;
  double max_deviation = 0.0;
  double tolerance = 0.0;
};

// Compares every g(chi^j) with the applicable closed form, translating through
// g(chi^p) = g(chi) and g(chi^{-1}) = chi(-1) conj g(chi). With `strict`,
// throws ClosedFormMismatch unless every applicable row matches.
ClosedFormReport compare_with_closed_form(const CyclotomicScheme& scheme,
                                          const IndexTwoParams& params, bool strict = true);

struct DavenportHasseRow {
  std::uint32_t j = 0;
  std::complex<double> lifted;      // g_E(chi^{-j})
  std::complex<double> base_power;  // (-1)^{s-1} g_F(eta^{-j})^s
  double deviation = 0.0;
};

struct DavenportHasseReport {
  std::uint32_t p = 0;
  unsigned f_base = 0;
  unsigned s = 0;
  std::uint32_t N = 0;
  std::uint64_t norm_exponent = 0;  // Norm(gamma_E) = gamma_F^e
  std::vector<DavenportHasseRow> rows;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool holds = false;
};

// Builds F = F_{p^f_base} and E = F_{p^{f_base s}} independently, embeds F in
// E through a root of F's modulus and compares the lifted Gauss sums.
DavenportHasseReport davenport_hasse_check(std::uint32_t p, unsigned f_base, unsigned s,
                                           std::uint32_t N, std::uint64_t budget = kDefaultBudget);

// Entry a is psi(gamma^a D) = sum_{i in I} eta_{(a+i) mod N}.
std::vector<std::complex<double>> restricted_sums(const CyclotomicScheme& scheme,
                                                  const CandidateSet& set);

}  // namespace cyclotome
