#include <doctest.h>

#include <random>

#include "cyclotome/error.hpp"
#include "cyclotome/finite_field.hpp"
#include "cyclotome/numtheory.hpp"

using namespace cyclotome;

namespace {

// Schoolbook product of two codes reduced by the field modulus.
Code slow_mul(const FiniteField& F, Code a, Code b) {
  const auto p = F.p();
  const unsigned f = F.degree();
  const auto da = F.digits(a), db = F.digits(b);
  std::vector<std::uint64_t> prod(2 * f, 0);
  for (unsigned i = 0; i < f; ++i) {
    for (unsigned j = 0; j < f; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{da[i]} * db[j]) % p;
  }
  const auto& mod = F.modulus();
  for (unsigned d = 2 * f - 1; d >= f; --d) {
    const auto lead = prod[d];
    if (lead == 0) continue;
    for (unsigned i = 0; i <= f; ++i) prod[d - f + i] = (prod[d - f + i] + (p - lead) * mod[i]) % p;
  }
  std::vector<std::uint32_t> out(prod.begin(), prod.begin() + f);
  return F.from_digits(out);
}

}  // namespace

TEST_CASE("field construction") {
  const auto F = build_field(11, 3);
  CHECK(F.order() == 1331);
  CHECK(F.modulus().size() == 4);
  CHECK(F.modulus().back() == 1);
  CHECK(build_field(3, 5).order() == 243);
  const auto F2 = build_field(2, 1);
  CHECK(F2.order() == 2);
  CHECK(F2.gamma() == 1);
  CHECK(F2.element_order(1) == 1);
  CHECK_THROWS_AS(build_field(12, 2), Error);
  CHECK_THROWS_AS(build_field(3, 30), Error);
  CHECK_THROWS_AS(build_field(3, 8, 1000), Error);
  try {
    build_field(4, 1);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotPrime);
  }
  try {
    build_field(2, 26);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BudgetExceeded);
  }
}

TEST_CASE("seeded construction is reproducible") {
  const auto a = build_field(7, 4, kDefaultBudget, 99);
  const auto b = build_field(7, 4, kDefaultBudget, 99);
  CHECK(a.same_tables(b));
  CHECK(a.modulus() == b.modulus());
  const auto c = field_from_modulus(7, 4, a.modulus(), 99, false);
  CHECK(a.same_tables(c));
}

TEST_CASE("tables are mutually inverse") {
  for (auto [p, f] : {std::pair{11u, 3u}, {3u, 5u}, {2u, 8u}, {5u, 1u}, {13u, 2u}}) {
    const auto F = build_field(p, f);
    const auto q = F.order();
    for (Code x = 1; x < q; ++x) CHECK_EQ(F.exp(F.dlog(x)), x);
    for (std::uint64_t k = 0; k + 1 < q; ++k) CHECK_EQ(F.dlog(F.exp(static_cast<std::int64_t>(k))), k);
    CHECK(F.element_order(F.gamma()) == q - 1);
    CHECK_THROWS_AS(F.dlog(0), Error);
  }
}

TEST_CASE("multiplication agrees with schoolbook reduction") {
  const auto F = build_field(11, 3);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 2000; ++i) {
    const Code a = rng() % F.order(), b = rng() % F.order();
    CHECK(F.mul(a, b) == slow_mul(F, a, b));
  }
  const auto G = build_field(2, 10);
  for (int i = 0; i < 2000; ++i) {
    const Code a = rng() % G.order(), b = rng() % G.order();
    CHECK(G.mul(a, b) == slow_mul(G, a, b));
  }
}

TEST_CASE("field axioms") {
  const auto F = build_field(3, 5);
  for (Code x = 0; x < F.order(); ++x) {
    CHECK(F.add(x, F.neg(x)) == 0);
    CHECK(F.sub(x, x) == 0);
    if (x != 0) CHECK(F.mul(x, F.inv(x)) == 1);
  }
  CHECK_THROWS_AS(F.inv(0), Error);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 500; ++i) {
    const Code a = rng() % 242 + 1, b = rng() % 242 + 1;
    CHECK((F.dlog(a) + F.dlog(b)) % 242 == F.dlog(F.mul(a, b)));
  }
}

TEST_CASE("discrete logs and orders") {
  const auto F = build_field(11, 3);
  CHECK(F.dlog(F.gamma()) == 1);
  CHECK(F.dlog(1) == 0);
  CHECK(F.dlog(F.mul(F.exp(5), F.exp(7))) == 12);
  CHECK(F.element_order(1) == 1);
  CHECK(F.element_order(F.exp(95)) == 14);
  CHECK(F.pow(F.gamma(), 1330) == 1);
  CHECK(F.pow(F.gamma(), -1) == F.inv(F.gamma()));
}

TEST_CASE("trace") {
  const auto F = build_field(3, 5);
  CHECK(F.trace(1) == 2);
  CHECK(F.trace(0) == 0);
  // Each fiber of the trace has p^{f-1} elements.
  std::vector<int> fiber(3, 0);
  for (Code x = 0; x < F.order(); ++x) ++fiber[F.trace(x)];
  CHECK(fiber == std::vector<int>{81, 81, 81});

  const auto E = build_field(11, 3);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const Code x = rng() % E.order();
    CHECK(E.trace(E.pow(x, 11)) == E.trace(x));
    // Tr(x) = x + x^p + x^{p^2}, which lies in the prime field.
    const Code direct = E.add(x, E.add(E.pow(x, 11), E.pow(x, 121)));
    CHECK(direct < 11);
    CHECK(E.trace(x) == direct);
    const Code y = rng() % E.order();
    CHECK(E.trace(E.add(x, y)) == (E.trace(x) + E.trace(y)) % 11);
  }
}

TEST_CASE("generator inversion") {
  const auto F = build_field(3, 5);
  const auto G = invert_generator(F);
  CHECK(G.orientation_flipped());
  CHECK(G.gamma() == F.exp(241));
  for (Code x = 2; x < F.order(); ++x) CHECK(G.dlog(x) == 242 - F.dlog(x));
  const auto H = invert_generator(G);
  CHECK_FALSE(H.orientation_flipped());
  CHECK(H.same_tables(F));
  const auto R = field_from_modulus(3, 5, F.modulus(), F.seed(), true);
  CHECK(R.same_tables(G));
}

TEST_CASE("field elements") {
  const auto F = build_field(5, 2);
  const auto G = build_field(7, 1);
  const auto g = F.generator();
  CHECK((g * g).code == F.exp(2));
  CHECK((g - g).code == 0);
  CHECK((g + (-g)).code == 0);
  CHECK(dlog(g) == 1);
  CHECK(element_order(F.one()) == 1);
  CHECK(trace(F.one()) == 2);
  CHECK_THROWS_AS(g + G.one(), Error);
}

TEST_CASE("modulus validation") {
  CHECK_THROWS_AS(field_from_modulus(3, 2, {2, 0, 1}, 0, false), Error);  // x^2 + 2 = (x-1)(x+1)
  CHECK_THROWS_AS(field_from_modulus(3, 2, {1, 0, 2}, 0, false), Error);  // not monic
  CHECK_THROWS_AS(field_from_modulus(3, 2, {1, 3, 1}, 0, false), Error);
  CHECK_NOTHROW(field_from_modulus(3, 2, {1, 0, 1}, 0, false));
}
