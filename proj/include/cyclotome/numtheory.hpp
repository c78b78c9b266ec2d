#pragma once

#include <compare>
#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

namespace cyclotome {

// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(std::uint64_t n) noexcept;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept;
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept;

// Trial division; (prime, exponent) pairs in increasing prime order.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);

// Least d > 0 with a^d == 1 (mod n). Throws NotCoprime, or InvalidInput for n < 2.
std::uint64_t mult_order(std::int64_t a, std::uint64_t n);

// ord_N(p) == phi(N)/2 and -1 is not a power of p modulo N.
bool is_index_two(std::uint64_t p, std::uint64_t N);

// Number of reduced primitive forms of discriminant -p1, p1 a prime = 3 (mod 4).
unsigned class_number(std::uint64_t p1);

// p-adic digit sum and digit-factorial product of a mod (p^f - 1).
std::uint64_t digit_sum_s(std::int64_t a, std::uint64_t p, unsigned f);
std::uint64_t digit_factorial_t(std::int64_t a, std::uint64_t p, unsigned f);

/// Parameters for the p1 = 7 (mod 8) construction with N = 2 p1^m.
struct CaseAParams {
  std::uint64_t p1 = 0;
  unsigned m = 0;
  std::uint64_t p = 0;
  std::uint64_t f = 0;    // phi(N)/2
  bool pds_flag = false;  // p = 1 (mod 4): the construction yields a Paley type PDS

  std::uint64_t N() const;
  std::uint64_t p1_power() const;  // p1^m

  // Validates every hypothesis; throws ConditionViolated naming the failed one.
  static CaseAParams make(std::uint64_t p1, unsigned m, std::uint64_t p);

  friend auto operator<=>(const CaseAParams& a, const CaseAParams& b) {
    return std::tie(a.p1, a.m, a.p) <=> std::tie(b.p1, b.m, b.p);
  }
  friend bool operator==(const CaseAParams& a, const CaseAParams& b) {
    return std::tie(a.p1, a.m, a.p) == std::tie(b.p1, b.m, b.p);
  }
};

/// Parameters for the p1 = 3 (mod 8) construction with N = 2 p1.
struct CaseBParams {
  std::uint64_t p1 = 0;
  std::uint64_t p = 0;
  unsigned h = 0;
  std::uint64_t f = 0;  // (p1 - 1)/2

  std::uint64_t N() const { return 2 * p1; }

  // Checks conditions (1), (3), (4) and the index-2 condition, in that order;
  // throws ConditionViolated whose message names the first one that fails.
  static CaseBParams make(std::uint64_t p1, std::uint64_t p);

  friend auto operator<=>(const CaseBParams& a, const CaseBParams& b) {
    return std::tie(a.p1, a.p) <=> std::tie(b.p1, b.p);
  }
  friend bool operator==(const CaseBParams& a, const CaseBParams& b) {
    return std::tie(a.p1, a.p) == std::tie(b.p1, b.p);
  }
};

std::vector<CaseAParams> search_case_A(std::uint64_t p1_max, unsigned m_max, std::uint64_t p_max);
std::vector<CaseBParams> search_case_B(std::uint64_t p1_max, std::uint64_t p_max);

}  // namespace cyclotome
