#include <doctest.h>

#include <numeric>
#include <random>

#include "cyclotome/charsums.hpp"
#include "cyclotome/construct.hpp"
#include "cyclotome/error.hpp"
#include "cyclotome/verify.hpp"
#include "oracles.hpp"

using namespace cyclotome;

namespace {

CandidateSet skew1331(std::vector<std::uint32_t> I = {0, 1, 2, 3, 4, 5, 6}) {
  return construct_case_A(CaseAParams::make(7, 1, 11), 1, IndexSet(std::move(I), 14));
}

SchemePtr scheme_for(std::uint32_t p, unsigned f, std::uint32_t N) {
  return build_scheme(std::make_shared<const FiniteField>(build_field(p, f)), N);
}

CandidateSet squares(std::uint32_t p, unsigned f) {
  auto S = scheme_for(p, f, 2);
  return union_of_classes(S, IndexSet({0}, 2));
}

// Replace one class of I by the antipode of another member, so I stops being a transversal.
CandidateSet perturb(const CandidateSet& D, std::uint32_t half, std::mt19937_64& rng) {
  auto members = D.index_set()->values();
  const std::uint32_t N = D.scheme().order();
  std::vector<std::uint32_t> out;
  for (int tries = 0; tries < 1000; ++tries) {
    const std::size_t i = rng() % members.size(), j = rng() % members.size();
    if (i == j) continue;
    const std::uint32_t repl = (members[j] + half) % N;
    if (std::find(members.begin(), members.end(), repl) != members.end()) continue;
    out = members;
    out[i] = repl;
    break;
  }
  REQUIRE_FALSE(out.empty());
  return union_of_classes(D.scheme_ptr(), IndexSet(out, N));
}

}  // namespace

TEST_CASE("skew and symmetry predicates") {
  const auto D = skew1331();
  CHECK(check_skew(D));
  CHECK_FALSE(check_symmetric(D));
  auto S = D.scheme_ptr();
  CHECK_FALSE(check_skew(union_of_classes(S, IndexSet({}, 14))));
  CHECK_FALSE(check_skew(union_of_classes(S, IndexSet({0, 7}, 14))));
  CHECK(check_symmetric(union_of_classes(S, IndexSet({0, 7}, 14))));
  CHECK(check_symmetric(squares(13, 1)));
}

TEST_CASE("difference histogram matches plain counting") {
  std::vector<CandidateSet> sets{skew1331(), squares(3, 5), squares(13, 1), squares(5, 4),
                                 squares(3, 7), squares(31, 2), squares(3, 1)};
  sets.push_back(construct_case_B(CaseBParams::make(11, 3)));
  sets.push_back(union_of_classes(scheme_for(2, 6, 9), IndexSet({0, 1, 2}, 9)));
  // p above the table limit takes the generic path; a sparse random subset keeps it quick.
  {
    auto S = scheme_for(1031, 2, 2);
    Bitmask bits(S->field().order());
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1500; ++i) bits.set(rng() % bits.size());
    sets.push_back(CandidateSet::from_membership(S, bits));
  }
  for (const auto& D : sets) {
    CAPTURE(D.field().order());
    const auto got = difference_histogram(D, 1);
    const auto want = oracle::differences(D);
    CHECK(got == want);
    const std::uint64_t total = std::accumulate(got.begin(), got.end(), std::uint64_t{0});
    CHECK(total == D.size() * (D.size() - (D.size() > 0 ? 1 : 0)));
    CHECK(difference_histogram(D, 3) == got);
  }
}

TEST_CASE("brute-force verdicts") {
  const auto r = verify_skew_hds_brute(skew1331());
  CHECK(r.verdict == Verdict::SkewHDS);
  CHECK(r.v == 1331);
  CHECK(r.k == 665);
  CHECK(r.lambda == 332u);

  const auto b = verify_skew_hds_brute(construct_case_B(CaseBParams::make(11, 3)));
  CHECK(b.verdict == Verdict::SkewHDS);
  CHECK(std::tie(b.v, b.k) == std::tuple{243u, 121u});
  CHECK(b.lambda == 60u);

  CHECK(verify_skew_hds_brute(squares(11, 3)).verdict == Verdict::SkewHDS);
  CHECK(verify_skew_hds_brute(squares(7, 1)).verdict == Verdict::SkewHDS);

  const auto pds = verify_paley_pds_brute(squares(13, 1));
  CHECK(pds.verdict == Verdict::PaleyPDS);
  CHECK(pds.k == 6);
  CHECK(pds.lambda == 2u);
  CHECK(pds.mu == 3u);
  CHECK_THROWS_AS(verify_paley_pds_brute(skew1331()), Error);
  CHECK_THROWS_AS(verify_skew_hds_brute(squares(2, 5)), Error);

  // Another transversal verifies; an index set hitting residue 0 twice does not.
  const auto S = skew1331().scheme_ptr();
  CHECK(verify_skew_hds_brute(union_of_classes(S, IndexSet({0, 1, 2, 3, 4, 5, 13}, 14))).verdict ==
        Verdict::SkewHDS);
  CHECK(verify_skew_hds_brute(union_of_classes(S, IndexSet({0, 1, 2, 3, 4, 5, 7}, 14))).verdict ==
        Verdict::Neither);
}

TEST_CASE("character verdicts") {
  const auto D = skew1331();
  const auto r = verify_by_characters(D);
  CHECK(r.verdict == Verdict::SkewHDS);
  CHECK(*r.max_abs_deviation < 1e-6 * std::sqrt(1331.0));
  CHECK(r.sign_pattern.size() == 14);
  CHECK(r.warnings.empty());

  const auto b = verify_by_characters(construct_case_B(CaseBParams::make(11, 3)));
  CHECK(b.verdict == Verdict::SkewHDS);
  CHECK(b.sign_pattern.size() == 22);

  const auto pds = verify_by_characters(squares(13, 1));
  CHECK(pds.verdict == Verdict::PaleyPDS);
  CHECK(pds.mu == 3u);

  Bitmask bits = D.membership();
  bits.flip(D.elements()[3]);
  const auto tampered = CandidateSet::from_membership(D.scheme_ptr(), bits);
  CHECK_THROWS_AS(verify_by_characters(tampered), Error);
  CHECK(verify(tampered, Method::BruteForce).verdict == Verdict::Neither);
  const auto both = verify(tampered, Method::Both);
  CHECK(both.verdict == Verdict::Neither);
  CHECK_FALSE(both.warnings.empty());
}

TEST_CASE("combined verification") {
  const auto r = verify(skew1331(), Method::Both, 2);
  CHECK(r.verdict == Verdict::SkewHDS);
  CHECK(r.method == Method::Both);
  CHECK(r.max_abs_deviation.has_value());
  CHECK(r.histogram_min == 332u);
  CHECK(r.histogram_max == 332u);
}

TEST_CASE("oracle equivalence on perturbed sets") {
  std::mt19937_64 rng(7);
  const auto A = skew1331();
  const auto B = construct_case_B(CaseBParams::make(11, 3));
  const auto C = construct_case_A(CaseAParams::make(7, 1, 23), 1, IndexSet({0, 1, 2, 3, 4, 5, 6}, 14));
  int refuted = 0;
  for (int n = 0; n < 50; ++n) {
    const auto& base = n % 3 == 0 ? A : (n % 3 == 1 ? B : C);
    const std::uint32_t half = base.scheme().order() / 2;
    const auto P = perturb(base, half, rng);
    const auto brute = verify(P, Method::BruteForce);
    const auto chars = verify(P, Method::CharacterSums);
    CHECK(brute.verdict == chars.verdict);
    refuted += brute.verdict == Verdict::Neither && chars.verdict == Verdict::Neither;
  }
  CHECK(refuted == 50);
}

TEST_CASE("sign pattern") {
  const auto D = skew1331();
  const auto rep = sign_pattern_check(D);
  REQUIRE(rep.i_a.size() == 14);
  for (std::uint32_t a = 0; a < 14; ++a) {
    CHECK((a + rep.i_a[a]) % 7 == 0);
    CHECK(rep.j_a[a] == (a + rep.i_a[a]) / 7);
    CHECK(rep.predicted[a] == ((1 + rep.j_a[a]) % 2 == 0 ? 1 : -1));
    CHECK(rep.observed[a] == rep.global_constant * rep.predicted[a]);
  }
  // Frozen with the default field seed.
  CHECK(rep.global_constant == 1);
  CHECK(sign_pattern_check(skew1331({0, 1, 3, 4, 5, 6, 9})).global_constant == 1);
  CHECK_THROWS_AS(sign_pattern_check(construct_case_B(CaseBParams::make(11, 3))), Error);
  CHECK_THROWS_AS(sign_pattern_check(union_of_classes(D.scheme_ptr(), *D.index_set())), Error);
}
