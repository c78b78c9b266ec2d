#include "cyclotome/finite_field.hpp"

#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "cyclotome/error.hpp"
#include "cyclotome/numtheory.hpp"

namespace cyclotome {

namespace {

// Dense polynomials over F_p, coefficients low to high.
using Poly = std::vector<std::uint64_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t inv_mod_p(std::uint64_t a, std::uint64_t p) { return pow_mod(a, p - 2, p); }

// a mod m for monic m.
Poly poly_mod(Poly a, const Poly& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = (a[shift + i] + (p - m[i]) * lead) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  return poly_mod(std::move(prod), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint64_t p) {
  Poly result = poly_mod(Poly{1}, m, p);
  base = poly_mod(std::move(base), m, p);
  while (e > 0) {
    if (e & 1u) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return result;
}

Poly poly_sub(Poly a, const Poly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    const std::uint64_t inv = inv_mod_p(b.back(), p);
    Poly monic = b;
    for (auto& c : monic) c = c * inv % p;
    Poly r = poly_mod(std::move(a), monic, p);
    a = std::move(monic);
    b = std::move(r);
  }
  return a;
}

// Rabin's test: x^{p^f} = x mod m, and gcd(x^{p^{f/l}} - x, m) = 1 for primes l | f.
bool is_irreducible(const Poly& m, std::uint64_t p, unsigned f) {
  if (f == 1) return true;
  if (m[0] == 0) return false;
  const Poly x = poly_mod(Poly{0, 1}, m, p);
  std::vector<Poly> frob(f + 1);  // frob[k] = x^{p^k} mod m
  frob[0] = x;
  for (unsigned k = 1; k <= f; ++k) frob[k] = poly_powmod(frob[k - 1], p, m, p);
  if (poly_sub(frob[f], x, p).size() != 0) return false;
  for (const auto& [ell, e] : factorize(f)) {
    const Poly g = poly_gcd(m, poly_sub(frob[f / ell], x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

bool is_primitive(const Poly& gamma, const Poly& m, std::uint64_t p, std::uint64_t q,
                  const std::vector<std::pair<std::uint64_t, unsigned>>& qm1_factors) {
  if (gamma.empty()) return false;
  for (const auto& [ell, e] : qm1_factors) {
    const Poly r = poly_powmod(gamma, (q - 1) / ell, m, p);
    if (r.size() == 1 && r[0] == 1) return false;
  }
  return true;
}

std::uint64_t checked_order(std::uint32_t p, unsigned f, std::uint64_t budget) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
  if (f == 0) throw Error(Errc::InvalidInput, "extension degree must be positive");
  const std::uint64_t cap = std::min<std::uint64_t>(budget, std::uint64_t{1} << 31);
  std::uint64_t q = 1;
  for (unsigned i = 0; i < f; ++i) {
    if (q > cap / p) {
      throw Error(Errc::BudgetExceeded, std::to_string(p) + "^" + std::to_string(f) +
                                            " exceeds the table budget " + std::to_string(cap));
    }
    q *= p;
  }
  return q;
}

}  // namespace

// Builds the tables for gamma = x + c when that element is primitive.
bool FiniteField::try_tables(std::uint32_t c) {
  const std::uint64_t p = p_;
  Poly m(modulus_.begin(), modulus_.end());
  Poly gamma = poly_mod(Poly{c, 1}, m, p);
  if (!is_primitive(gamma, m, p, q_, factorize(q_ - 1))) return false;

  exp_.assign(q_ - 1, 0);
  dlog_.assign(q_, UINT32_MAX);
  std::vector<std::uint64_t> cur(f_, 0), next(f_, 0);
  cur[0] = 1;
  for (std::uint64_t k = 0; k + 1 < q_; ++k) {
    Code code = 0;
    for (unsigned i = 0; i < f_; ++i) code += static_cast<Code>(cur[i] * place_[i]);
    if (dlog_[code] != UINT32_MAX) throw std::logic_error("primitive element repeated a power");
    exp_[k] = code;
    dlog_[code] = static_cast<std::uint32_t>(k);
    // cur <- cur * (x + c), using x^f = -(m_0 + ... + m_{f-1} x^{f-1}).
    const std::uint64_t top = cur[f_ - 1];
    for (unsigned i = f_; i-- > 0;) next[i] = i > 0 ? cur[i - 1] : 0;
    for (unsigned i = 0; i < f_; ++i) {
      next[i] = (next[i] + (p - modulus_[i]) * top + c * cur[i]) % p;
    }
    cur.swap(next);
  }
  return true;
}

void FiniteField::finish() {
  basis_trace_.assign(f_, 0);
  for (unsigned i = 0; i < f_; ++i) {
    const Code y = static_cast<Code>(place_[i]);
    const std::uint64_t dl = dlog_[y];
    Code sum = 0;
    std::uint64_t e = dl;
    for (unsigned j = 0; j < f_; ++j) {
      sum = add(sum, exp_[e % (q_ - 1)]);
      e = static_cast<std::uint64_t>(static_cast<unsigned __int128>(e) * p_ % (q_ - 1));
    }
    if (sum >= p_) throw std::logic_error("trace landed outside the prime field");
    basis_trace_[i] = sum;
  }
}

FiniteField build_field(std::uint32_t p, unsigned f, std::uint64_t budget, std::uint64_t seed) {
  const std::uint64_t q = checked_order(p, f, budget);
  FiniteField field;
  field.p_ = p;
  field.f_ = f;
  field.q_ = q;
  field.seed_ = seed;
  field.place_.resize(f);
  for (unsigned i = 0; i < f; ++i) field.place_[i] = i == 0 ? 1 : field.place_[i - 1] * p;

  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<std::uint32_t> m(f + 1, 0);
    for (unsigned i = 0; i < f; ++i) m[i] = static_cast<std::uint32_t>(rng() % p);
    m[f] = 1;
    if (!is_irreducible(Poly(m.begin(), m.end()), p, f)) continue;
    field.modulus_ = std::move(m);
    for (std::uint32_t c = 0; c < p; ++c) {
      if (field.try_tables(c)) {
        field.finish();
        return field;
      }
    }
  }
  throw std::logic_error("no irreducible modulus with a primitive x + c was found");
}

FiniteField field_from_modulus(std::uint32_t p, unsigned f, std::vector<std::uint32_t> modulus,
                               std::uint64_t seed, bool flipped, std::uint64_t budget) {
  const std::uint64_t q = checked_order(p, f, budget);
  if (modulus.size() != f + 1 || modulus[f] != 1) {
    throw Error(Errc::InvalidInput, "modulus must be monic of degree " + std::to_string(f));
  }
  for (auto c : modulus) {
    if (c >= p) throw Error(Errc::InvalidInput, "modulus coefficient out of range");
  }
  if (!is_irreducible(Poly(modulus.begin(), modulus.end()), p, f)) {
    throw Error(Errc::InvalidInput, "modulus is reducible");
  }
  FiniteField field;
  field.p_ = p;
  field.f_ = f;
  field.q_ = q;
  field.seed_ = seed;
  field.modulus_ = std::move(modulus);
  field.place_.resize(f);
  for (unsigned i = 0; i < f; ++i) field.place_[i] = i == 0 ? 1 : field.place_[i - 1] * p;
  for (std::uint32_t c = 0; c < p; ++c) {
    if (field.try_tables(c)) {
      field.finish();
      return flipped ? invert_generator(field) : field;
    }
  }
  throw Error(Errc::InvalidInput, "modulus admits no primitive element of the form x + c");
}

FiniteField invert_generator(const FiniteField& field) {
  FiniteField out = field;
  const std::uint64_t n = field.q_ - 1;
  for (std::uint64_t k = 0; k < n; ++k) out.exp_[k] = field.exp_[(n - k) % n];
  for (std::uint64_t x = 1; x < field.q_; ++x) {
    out.dlog_[x] = static_cast<std::uint32_t>((n - field.dlog_[x]) % n);
  }
  out.flipped_ = !field.flipped_;
  return out;
}

FieldElement FiniteField::element(Code code) const {
  if (code >= q_) throw Error(Errc::InvalidInput, "element code out of range");
  return FieldElement{this, code};
}

Code FiniteField::exp(std::int64_t k) const noexcept {
  const auto n = static_cast<std::int64_t>(q_ - 1);
  return exp_[static_cast<std::size_t>(((k % n) + n) % n)];
}

std::uint32_t FiniteField::dlog(Code x) const {
  if (x == 0) throw Error(Errc::ZeroElement, "discrete log of zero");
  return dlog_[x];
}

Code FiniteField::add(Code a, Code b) const noexcept {
  if (p_ == 2) return a ^ b;
  Code out = 0;
  for (unsigned i = 0; i < f_; ++i) {
    std::uint32_t s = a % p_ + b % p_;
    a /= p_;
    b /= p_;
    if (s >= p_) s -= p_;
    out += static_cast<Code>(s * place_[i]);
  }
  return out;
}

Code FiniteField::neg(Code a) const noexcept {
  if (p_ == 2) return a;
  Code out = 0;
  for (unsigned i = 0; i < f_; ++i) {
    const std::uint32_t d = a % p_;
    a /= p_;
    if (d != 0) out += static_cast<Code>((p_ - d) * place_[i]);
  }
  return out;
}

Code FiniteField::sub(Code a, Code b) const noexcept { return add(a, neg(b)); }

Code FiniteField::mul(Code a, Code b) const noexcept {
  if (a == 0 || b == 0) return 0;
  std::uint64_t e = std::uint64_t{dlog_[a]} + dlog_[b];
  if (e >= q_ - 1) e -= q_ - 1;
  return exp_[e];
}

Code FiniteField::inv(Code a) const { return pow(a, -1); }

Code FiniteField::pow(Code a, std::int64_t e) const {
  if (a == 0) {
    if (e > 0) return 0;
    if (e == 0) return 1;
    throw Error(Errc::ZeroElement, "negative power of zero");
  }
  const auto n = static_cast<__int128>(q_ - 1);
  __int128 k = static_cast<__int128>(dlog_[a]) * e % n;
  if (k < 0) k += n;
  return exp_[static_cast<std::size_t>(k)];
}

std::uint32_t FiniteField::trace(Code x) const noexcept {
  std::uint64_t t = 0;
  for (unsigned i = 0; i < f_; ++i) {
    t += std::uint64_t{x % p_} * basis_trace_[i];
    x /= p_;
  }
  return static_cast<std::uint32_t>(t % p_);
}

std::uint64_t FiniteField::element_order(Code x) const {
  const std::uint64_t n = q_ - 1;
  return n / std::gcd(std::uint64_t{dlog(x)}, n);
}

std::vector<std::uint32_t> FiniteField::digits(Code x) const {
  std::vector<std::uint32_t> out(f_);
  for (unsigned i = 0; i < f_; ++i) {
    out[i] = x % p_;
    x /= p_;
  }
  return out;
}

Code FiniteField::from_digits(std::span<const std::uint32_t> d) const {
  if (d.size() != f_) throw Error(Errc::InvalidInput, "wrong number of digits");
  Code out = 0;
  for (unsigned i = 0; i < f_; ++i) {
    if (d[i] >= p_) throw Error(Errc::InvalidInput, "digit out of range");
    out += static_cast<Code>(d[i] * place_[i]);
  }
  return out;
}

namespace {

const FiniteField& common_field(FieldElement a, FieldElement b) {
  if (a.field == nullptr || a.field != b.field) {
    throw Error(Errc::FieldMismatch, "operands belong to different fields");
  }
  return *a.field;
}

const FiniteField& owner(FieldElement a) {
  if (a.field == nullptr) throw Error(Errc::FieldMismatch, "element has no field");
  return *a.field;
}

}  // namespace

FieldElement operator+(FieldElement a, FieldElement b) {
  const auto& F = common_field(a, b);
  return {&F, F.add(a.code, b.code)};
}

FieldElement operator-(FieldElement a, FieldElement b) {
  const auto& F = common_field(a, b);
  return {&F, F.sub(a.code, b.code)};
}

FieldElement operator-(FieldElement a) {
  const auto& F = owner(a);
  return {&F, F.neg(a.code)};
}

FieldElement operator*(FieldElement a, FieldElement b) {
  const auto& F = common_field(a, b);
  return {&F, F.mul(a.code, b.code)};
}

std::uint32_t trace(FieldElement x) { return owner(x).trace(x.code); }
std::uint32_t dlog(FieldElement x) { return owner(x).dlog(x.code); }
std::uint64_t element_order(FieldElement x) { return owner(x).element_order(x.code); }

}  // namespace cyclotome
