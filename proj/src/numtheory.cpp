#include "cyclotome/numtheory.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "cyclotome/error.hpp"

namespace cyclotome {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1u) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  unsigned r = 0;
  while ((d & 1u) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < r; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d <= n / d; d += (d == 2 ? 1 : 2)) {
    if (n % d != 0) continue;
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t phi = n;
  for (const auto& [prime, e] : factorize(n)) phi = phi / prime * (prime - 1);
  return phi;
}

std::uint64_t mult_order(std::int64_t a, std::uint64_t n) {
  if (n < 2) throw Error(Errc::InvalidInput, "modulus must exceed 1");
  const auto sn = static_cast<std::int64_t>(n);
  const auto residue = static_cast<std::uint64_t>(((a % sn) + sn) % sn);
  if (std::gcd(residue, n) != 1) {
    throw Error(Errc::NotCoprime, std::to_string(a) + " is not a unit modulo " + std::to_string(n));
  }
  std::uint64_t order = euler_phi(n);
  for (const auto& [prime, e] : factorize(order)) {
    for (unsigned i = 0; i < e && order % prime == 0; ++i) {
      if (pow_mod(residue, order / prime, n) != 1) break;
      order /= prime;
    }
  }
  return order;
}

bool is_index_two(std::uint64_t p, std::uint64_t N) {
  const std::uint64_t phi = euler_phi(N);
  if (phi % 2 != 0) return false;
  const std::uint64_t order = mult_order(static_cast<std::int64_t>(p), N);
  if (order != phi / 2) return false;
  if (order % 2 != 0) return true;
  return pow_mod(p, order / 2, N) != N - 1;
}

unsigned class_number(std::uint64_t p1) {
  if (p1 % 4 != 3) {
    throw Error(Errc::BadResidue, std::to_string(p1) + " is not congruent to 3 mod 4");
  }
  if (!is_prime(p1)) throw Error(Errc::NotPrime, std::to_string(p1) + " is not prime");
  const auto disc = static_cast<std::int64_t>(p1);
  unsigned count = 0;
  for (std::int64_t a = 1; 3 * a * a <= disc; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      if ((b & 1) == 0) continue;  // b^2 = -p1 = 1 (mod 4)
      const std::int64_t num = b * b + disc;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
      ++count;
    }
  }
  return count;
}

namespace {

std::vector<std::uint64_t> padic_digits(std::int64_t a, std::uint64_t p, unsigned f) {
  if (p < 2 || f == 0) throw Error(Errc::InvalidInput, "need p >= 2 and f >= 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < f; ++i) {
    if (q > std::numeric_limits<std::uint64_t>::max() / p) {
      throw Error(Errc::Overflow, "p^f does not fit in 64 bits");
    }
    q *= p;
  }
  const std::uint64_t modulus = q - 1;
  std::uint64_t r;
  if (a >= 0) {
    r = static_cast<std::uint64_t>(a) % modulus;
  } else {
    const std::uint64_t neg = (static_cast<std::uint64_t>(-(a + 1)) + 1) % modulus;
    r = (modulus - neg) % modulus;
  }
  if (r == 0) {
    throw Error(Errc::DegenerateResidue, std::to_string(a) + " is divisible by p^f - 1");
  }
  std::vector<std::uint64_t> digits(f);
  for (unsigned i = 0; i < f; ++i) {
    digits[i] = r % p;
    r /= p;
  }
  return digits;
}

}  // namespace

std::uint64_t digit_sum_s(std::int64_t a, std::uint64_t p, unsigned f) {
  const auto digits = padic_digits(a, p, f);
  return std::accumulate(digits.begin(), digits.end(), std::uint64_t{0});
}

std::uint64_t digit_factorial_t(std::int64_t a, std::uint64_t p, unsigned f) {
  std::uint64_t product = 1;
  for (auto d : padic_digits(a, p, f)) {
    for (std::uint64_t k = 2; k <= d; ++k) {
      if (product > std::numeric_limits<std::uint64_t>::max() / k) {
        throw Error(Errc::Overflow, "digit factorial product exceeds 64 bits");
      }
      product *= k;
    }
  }
  return product;
}

namespace {

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / base) {
      throw Error(Errc::Overflow, "power exceeds 64 bits");
    }
    r *= base;
  }
  return r;
}

[[noreturn]] void violated(const std::string& what) { throw Error(Errc::ConditionViolated, what); }

}  // namespace

std::uint64_t CaseAParams::p1_power() const { return checked_pow(p1, m); }
std::uint64_t CaseAParams::N() const { return 2 * p1_power(); }

CaseAParams CaseAParams::make(std::uint64_t p1, unsigned m, std::uint64_t p) {
  if (!is_prime(p1) || p1 % 8 != 7) violated("p1 = " + std::to_string(p1) + " is not a prime = 7 (mod 8)");
  if (m == 0) violated("m must be positive");
  if (!is_prime(p)) violated("p = " + std::to_string(p) + " is not prime");
  CaseAParams params;
  params.p1 = p1;
  params.m = m;
  params.p = p;
  const std::uint64_t N = params.N();
  if (std::gcd(p, N) != 1) violated("gcd(p, N) != 1");
  if (!is_index_two(p, N)) {
    violated("index-2 condition failed for p = " + std::to_string(p) + ", N = " + std::to_string(N));
  }
  params.f = euler_phi(N) / 2;
  params.pds_flag = (p % 4 == 1);
  return params;
}

CaseBParams CaseBParams::make(std::uint64_t p1, std::uint64_t p) {
  if (!is_prime(p1) || p1 % 8 != 3 || p1 == 3) {
    violated("condition (1) failed: p1 = " + std::to_string(p1) + " is not a prime = 3 (mod 8) other than 3");
  }
  if (!is_prime(p)) violated("p = " + std::to_string(p) + " is not prime");
  const unsigned h = class_number(p1);
  // 1 + p1 = 4 p^h, compared without overflowing p^h.
  bool equal = true;
  {
    std::uint64_t target = 1 + p1;
    if (target % 4 != 0) {
      equal = false;
    } else {
      target /= 4;
      for (unsigned i = 0; i < h && equal; ++i) {
        if (target % p != 0) equal = false;
        target /= p;
      }
      equal = equal && target == 1;
    }
  }
  if (!equal) {
    violated("condition (3) failed: 1 + p1 != 4 p^h with h = " + std::to_string(h));
  }
  if (p % 4 != 3) violated("condition (4) failed: p = " + std::to_string(p) + " is not 3 (mod 4)");
  if (!is_index_two(p, 2 * p1)) {
    violated("index-2 condition failed: ord_" + std::to_string(2 * p1) + "(" + std::to_string(p) +
             ") = " + std::to_string(mult_order(static_cast<std::int64_t>(p), 2 * p1)));
  }
  CaseBParams params;
  params.p1 = p1;
  params.p = p;
  params.h = h;
  params.f = (p1 - 1) / 2;
  return params;
}

std::vector<CaseAParams> search_case_A(std::uint64_t p1_max, unsigned m_max, std::uint64_t p_max) {
  std::vector<CaseAParams> out;
  for (std::uint64_t p1 = 7; p1 <= p1_max; p1 += 8) {
    if (!is_prime(p1)) continue;
    std::uint64_t power = 1;
    for (unsigned m = 1; m <= m_max; ++m) {
      if (power > std::numeric_limits<std::uint64_t>::max() / (2 * p1)) break;
      power *= p1;
      const std::uint64_t N = 2 * power;
      for (std::uint64_t p = 3; p <= p_max; p += 2) {
        if (p == p1 || !is_prime(p)) continue;
        if (!is_index_two(p, N)) continue;
        CaseAParams params;
        params.p1 = p1;
        params.m = m;
        params.p = p;
        params.f = euler_phi(N) / 2;
        params.pds_flag = (p % 4 == 1);
        out.push_back(params);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CaseBParams> search_case_B(std::uint64_t p1_max, std::uint64_t p_max) {
  std::vector<CaseBParams> out;
  for (std::uint64_t p1 = 11; p1 <= p1_max; p1 += 8) {
    if (!is_prime(p1)) continue;
    const unsigned h = class_number(p1);
    for (std::uint64_t p = 3; p <= p_max; p += 4) {
      if (!is_prime(p) || p == p1) continue;
      std::uint64_t ph = 1;
      bool overflow = false;
      for (unsigned i = 0; i < h; ++i) {
        if (ph > (p1 + 1) / p) {
          overflow = true;
          break;
        }
        ph *= p;
      }
      if (overflow || 4 * ph != 1 + p1) continue;
      if (!is_index_two(p, 2 * p1)) continue;
      if ((p1 + 1) % p != 0) {
        throw Error(Errc::ConditionViolated, "case-B hit with p1 != -1 (mod p)");
      }
      CaseBParams params;
      params.p1 = p1;
      params.p = p;
      params.h = h;
      params.f = (p1 - 1) / 2;
      out.push_back(params);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cyclotome
