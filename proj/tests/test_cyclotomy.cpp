#include <doctest.h>

#include <numeric>
#include <random>

#include "cyclotome/candidate_set.hpp"
#include "cyclotome/cyclotomy.hpp"
#include "cyclotome/error.hpp"

using namespace cyclotome;

namespace {

SchemePtr scheme_for(std::uint32_t p, unsigned f, std::uint32_t N) {
  return build_scheme(std::make_shared<const FiniteField>(build_field(p, f)), N);
}

std::vector<std::uint32_t> iota(std::uint32_t n) {
  std::vector<std::uint32_t> v(n);
  std::iota(v.begin(), v.end(), 0u);
  return v;
}

}  // namespace

TEST_CASE("index sets") {
  const IndexSet I({5, 1, 3}, 14);
  CHECK(I.values() == std::vector<std::uint32_t>{1, 3, 5});
  CHECK(I.contains(3));
  CHECK_FALSE(I.contains(4));
  CHECK_THROWS_AS(IndexSet({1, 1}, 14), Error);
  CHECK_THROWS_AS(IndexSet({14}, 14), Error);
}

TEST_CASE("class sizes and membership") {
  auto S = scheme_for(11, 3, 14);
  CHECK(S->class_size() == 95);
  CHECK(scheme_for(3, 5, 22)->class_size() == 11);
  auto T = scheme_for(7, 2, 48);
  CHECK(T->class_size() == 1);
  const auto& F = S->field();
  CHECK(S->class_of(F.gamma()) == 1);
  CHECK(S->class_of(1) == 0);
  CHECK_THROWS_AS(S->class_of(0), Error);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const Code x = rng() % 1330 + 1, y = rng() % 1330 + 1;
    CHECK(S->class_of(F.mul(x, y)) == (S->class_of(x) + S->class_of(y)) % 14);
  }
  CHECK_THROWS_AS(scheme_for(11, 3, 4), Error);
  CHECK_THROWS_AS(scheme_for(11, 3, 1), Error);
}

TEST_CASE("classes partition the multiplicative group") {
  for (auto [p, f, N] : {std::tuple{11u, 3u, 14u}, {3u, 5u, 22u}, {7u, 3u, 6u}, {2u, 6u, 9u}}) {
    auto S = scheme_for(p, f, N);
    std::vector<int> hits(S->field().order(), 0);
    std::uint64_t total = 0;
    for (std::uint32_t i = 0; i < N; ++i) {
      std::uint64_t size = 0;
      S->for_each_in_class(i, [&](Code x) {
        ++hits[x];
        ++size;
        CHECK(S->class_of(x) == i);
      });
      CHECK(size == S->class_size());
      total += size;
    }
    CHECK(total == S->field().order() - 1);
    CHECK(hits[0] == 0);
    for (std::size_t x = 1; x < hits.size(); ++x) CHECK(hits[x] == 1);
  }
}

TEST_CASE("class of -1") {
  CHECK(scheme_for(11, 3, 14)->minus_one_class() == 7);
  CHECK(scheme_for(3, 5, 22)->minus_one_class() == 11);
  CHECK(scheme_for(37, 3, 14)->minus_one_class() == 0);
  CHECK_THROWS_AS(scheme_for(2, 4, 5)->minus_one_class(), Error);
  auto S = scheme_for(3, 5, 22);
  const auto& F = S->field();
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const Code x = rng() % 242 + 1;
    CHECK(S->class_of(F.neg(x)) == (S->class_of(x) + 11) % 22);
  }
}

TEST_CASE("Gauss periods") {
  for (auto [p, f, N] : {std::tuple{11u, 3u, 14u}, {3u, 5u, 22u}, {37u, 3u, 14u}, {7u, 1u, 2u}}) {
    auto S = scheme_for(p, f, N);
    const auto eta = S->periods();
    REQUIRE(eta.size() == N);
    const auto sum = std::accumulate(eta.begin(), eta.end(), std::complex<double>{});
    CHECK(std::abs(sum + 1.0) < 1e-9);
    for (std::uint32_t i = 0; i < N; ++i) {
      CHECK(std::abs(eta[i]) <= static_cast<double>(S->class_size()) + 1e-9);
      // Direct sum over the class.
      std::complex<double> direct = 0;
      S->for_each_in_class(i, [&](Code x) {
        direct += std::polar(1.0, 2 * 3.14159265358979323846 * S->field().trace(x) / p);
      });
      CHECK(std::abs(direct - eta[i]) < 1e-9);
    }
  }
}

TEST_CASE("periods under generator inversion") {
  auto F = std::make_shared<const FiniteField>(build_field(3, 5));
  auto G = std::make_shared<const FiniteField>(invert_generator(*F));
  auto S = build_scheme(F, 22), T = build_scheme(G, 22);
  for (std::uint32_t i = 0; i < 22; ++i) {
    CHECK(std::abs(T->periods()[i] - S->periods()[(22 - i) % 22]) < 1e-9);
  }
}

TEST_CASE("unions of classes") {
  auto S = scheme_for(11, 3, 14);
  CHECK(union_of_classes(S, IndexSet({}, 14)).size() == 0);
  const auto full = union_of_classes(S, IndexSet(iota(14), 14));
  CHECK(full.size() == 1330);
  CHECK_FALSE(full.contains(0));
  const auto D = union_of_classes(S, IndexSet(iota(7), 14));
  CHECK(D.size() == 665);
  CHECK(D.is_class_union());
  CHECK_THROWS_AS(union_of_classes(S, IndexSet({0}, 22)), Error);

  auto again = CandidateSet::from_membership(S, D.membership());
  REQUIRE(again.is_class_union());
  CHECK(*again.index_set() == *D.index_set());
  Bitmask bits = D.membership();
  bits.flip(D.elements().front());
  CHECK_FALSE(CandidateSet::from_membership(S, bits).is_class_union());
  Bitmask with_zero = D.membership();
  with_zero.set(0);
  CHECK_FALSE(CandidateSet::from_membership(S, with_zero).is_class_union());
}

TEST_CASE("bitmask hex round trip") {
  Bitmask b(21);
  b.set(0);
  b.set(9);
  b.set(20);
  CHECK(b.to_hex() == "010210");
  CHECK(Bitmask::from_hex("010210", 21) == b);
  CHECK_THROWS_AS(Bitmask::from_hex("0102", 21), Error);
  CHECK_THROWS_AS(Bitmask::from_hex("01021g", 21), Error);
  CHECK_THROWS_AS(Bitmask::from_hex("010230", 21), Error);  // bit 21 set
}
