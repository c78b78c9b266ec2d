#include "cyclotome/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "cyclotome/charsums.hpp"
#include "cyclotome/error.hpp"

namespace cyclotome {

const char* verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::SkewHDS: return "SkewHDS";
    case Verdict::PaleyPDS: return "PaleyPDS";
    case Verdict::Neither: break;
  }
  return "Neither";
}

const char* method_name(Method m) noexcept {
  switch (m) {
    case Method::BruteForce: return "BruteForce";
    case Method::CharacterSums: return "CharacterSums";
    case Method::Both: break;
  }
  return "Both";
}

double character_verdict_tolerance(std::uint64_t q) noexcept {
  return 1e-3 * std::sqrt(static_cast<double>(q));
}

bool check_skew(const CandidateSet& D) {
  const FiniteField& F = D.field();
  const std::uint64_t q = F.order();
  if (q % 2 == 0 || D.contains(0) || D.size() != (q - 1) / 2) return false;
  for (Code x = 1; x < q; ++x) {
    if (D.contains(x) && D.contains(F.neg(x))) return false;
  }
  return true;
}

bool check_symmetric(const CandidateSet& D) {
  const FiniteField& F = D.field();
  if (D.contains(0)) return false;
  for (Code x = 1; x < F.order(); ++x) {
    if (D.contains(x) != D.contains(F.neg(x))) return false;
  }
  return true;
}

namespace {

// Digitwise subtraction on blocks of `digits` base-p digits, radix P = p^digits.
struct ChunkTable {
  std::uint32_t P = 1;
  unsigned digits = 0;
  unsigned chunks = 0;
  std::vector<std::uint32_t> sub;  // sub[b * P + a] = a - b

  ChunkTable(std::uint32_t p, unsigned f) {
    while (digits < f && std::uint64_t{P} * p <= 1024) {
      P *= p;
      ++digits;
    }
    chunks = (f + digits - 1) / digits;
    sub.resize(std::size_t{P} * P);
    for (std::uint32_t b = 0; b < P; ++b) {
      for (std::uint32_t a = 0; a < P; ++a) {
        std::uint32_t out = 0, place = 1, x = a, y = b;
        for (unsigned i = 0; i < digits; ++i) {
          const std::uint32_t dx = x % p, dy = y % p;
          x /= p;
          y /= p;
          out += ((dx + p - dy) % p) * place;
          place *= p;
        }
        sub[std::size_t{b} * P + a] = out;
      }
    }
  }
};

template <unsigned NC>
void count_block(const std::vector<std::vector<std::uint16_t>>& split, const ChunkTable& table,
                 std::size_t lo, std::size_t hi, std::vector<std::uint32_t>& hist) {
  const std::size_t k = split[0].size();
  const std::uint32_t* rows[NC];
  const std::uint16_t* cols[NC];
  std::uint32_t scale[NC];
  for (unsigned c = 0; c < NC; ++c) {
    cols[c] = split[c].data();
    scale[c] = c == 0 ? 1 : scale[c - 1] * table.P;
  }
  for (std::size_t bi = lo; bi < hi; ++bi) {
    for (unsigned c = 0; c < NC; ++c) rows[c] = table.sub.data() + std::size_t{split[c][bi]} * table.P;
    for (std::size_t ai = 0; ai < k; ++ai) {
      std::uint32_t diff = rows[0][cols[0][ai]];
      for (unsigned c = 1; c < NC; ++c) diff += scale[c] * rows[c][cols[c][ai]];
      ++hist[diff];
    }
  }
}

void count_range(const FiniteField& F, const std::vector<Code>& elems, const ChunkTable* table,
                 const std::vector<std::vector<std::uint16_t>>& split, std::size_t lo, std::size_t hi,
                 std::vector<std::uint32_t>& hist) {
  const std::uint32_t p = F.p();
  if (p == 2) {
    for (std::size_t bi = lo; bi < hi; ++bi) {
      const Code b = elems[bi];
      for (Code a : elems) ++hist[a ^ b];
    }
    return;
  }
  if (F.degree() == 1) {
    for (std::size_t bi = lo; bi < hi; ++bi) {
      const Code b = elems[bi];
      for (Code a : elems) ++hist[a >= b ? a - b : a + p - b];
    }
    return;
  }
  if (table == nullptr) {
    for (std::size_t bi = lo; bi < hi; ++bi) {
      const Code b = elems[bi];
      for (Code a : elems) ++hist[F.sub(a, b)];
    }
    return;
  }
  switch (table->chunks) {
    case 1: count_block<1>(split, *table, lo, hi, hist); return;
    case 2: count_block<2>(split, *table, lo, hi, hist); return;
    case 3: count_block<3>(split, *table, lo, hi, hist); return;
    case 4: count_block<4>(split, *table, lo, hi, hist); return;
    default:
      for (std::size_t bi = lo; bi < hi; ++bi) {
        const Code b = elems[bi];
        for (Code a : elems) ++hist[F.sub(a, b)];
      }
  }
}

std::uint64_t checked_q(const CandidateSet& D, const char* op) {
  const std::uint64_t q = D.field().order();
  if (q % 2 == 0) throw Error(Errc::PreconditionFailed, std::string(op) + " needs odd q");
  return q;
}

}  // namespace

std::vector<std::uint32_t> difference_histogram(const CandidateSet& D, unsigned threads) {
  const FiniteField& F = D.field();
  const std::uint64_t q = F.order();
  const std::vector<Code> elems = D.elements();
  const std::size_t k = elems.size();

  std::unique_ptr<ChunkTable> table;
  std::vector<std::vector<std::uint16_t>> split;
  if (F.p() != 2 && F.degree() > 1 && F.p() <= 1024) {
    table = std::make_unique<ChunkTable>(F.p(), F.degree());
    split.assign(table->chunks, std::vector<std::uint16_t>(k));
    for (std::size_t i = 0; i < k; ++i) {
      Code x = elems[i];
      for (unsigned c = 0; c < table->chunks; ++c) {
        split[c][i] = static_cast<std::uint16_t>(x % table->P);
        x /= table->P;
      }
    }
  }

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(k, 1))));
  std::vector<std::uint32_t> hist(q, 0);
  if (threads == 1) {
    count_range(F, elems, table.get(), split, 0, k, hist);
  } else {
    std::vector<std::vector<std::uint32_t>> local(threads, std::vector<std::uint32_t>(q, 0));
    {
      std::vector<std::jthread> workers;
      for (unsigned t = 0; t < threads; ++t) {
        const std::size_t lo = k * t / threads, hi = k * (t + 1) / threads;
        workers.emplace_back([&, t, lo, hi] { count_range(F, elems, table.get(), split, lo, hi, local[t]); });
      }
    }
    for (const auto& part : local) {
      for (std::uint64_t x = 0; x < q; ++x) hist[x] += part[x];
    }
  }
  if (hist[0] != k) throw std::logic_error("difference counter produced a wrong zero count");
  hist[0] = 0;
  return hist;
}

VerificationReport verify_skew_hds_brute(const CandidateSet& D, unsigned threads) {
  const std::uint64_t q = checked_q(D, "skew Hadamard verification");
  const auto hist = difference_histogram(D, threads);
  VerificationReport rep;
  rep.method = Method::BruteForce;
  rep.v = q;
  rep.k = D.size();
  const std::uint64_t total = std::accumulate(hist.begin(), hist.end(), std::uint64_t{0});
  if (total != rep.k * (rep.k > 0 ? rep.k - 1 : 0)) throw std::logic_error("difference count not conserved");
  const auto [lo, hi] = std::minmax_element(hist.begin() + 1, hist.end());
  rep.histogram_min = *lo;
  rep.histogram_max = *hi;
  if (*lo == *hi) rep.lambda = *lo;
  const bool balanced = *lo == *hi && 4 * std::uint64_t{*lo} + 3 == q;
  rep.verdict = balanced && check_skew(D) ? Verdict::SkewHDS : Verdict::Neither;
  return rep;
}

VerificationReport verify_paley_pds_brute(const CandidateSet& D, unsigned threads) {
  const std::uint64_t q = D.field().order();
  if (q % 4 != 1) throw Error(Errc::PreconditionFailed, "Paley PDS verification needs q = 1 (mod 4)");
  const auto hist = difference_histogram(D, threads);
  VerificationReport rep;
  rep.method = Method::BruteForce;
  rep.v = q;
  rep.k = D.size();
  std::uint32_t lmin = UINT32_MAX, lmax = 0, mmin = UINT32_MAX, mmax = 0;
  for (Code x = 1; x < q; ++x) {
    if (D.contains(x)) {
      lmin = std::min(lmin, hist[x]);
      lmax = std::max(lmax, hist[x]);
    } else {
      mmin = std::min(mmin, hist[x]);
      mmax = std::max(mmax, hist[x]);
    }
  }
  const auto [lo, hi] = std::minmax_element(hist.begin() + 1, hist.end());
  rep.histogram_min = *lo;
  rep.histogram_max = *hi;
  if (lmin == lmax) rep.lambda = lmin;
  if (mmin == mmax) rep.mu = mmin;
  const bool params_ok = rep.k * 2 + 1 == q && rep.lambda && *rep.lambda * 4 + 5 == q && rep.mu &&
                         *rep.mu * 4 + 1 == q;
  rep.verdict = params_ok && check_symmetric(D) ? Verdict::PaleyPDS : Verdict::Neither;
  return rep;
}

VerificationReport verify_by_characters(const CandidateSet& D) {
  const std::uint64_t q = checked_q(D, "character verification");
  const auto sums = restricted_sums(D.scheme(), D);
  const double root = std::sqrt(static_cast<double>(q));
  VerificationReport rep;
  rep.method = Method::CharacterSums;
  rep.v = q;
  rep.k = D.size();

  const bool skew = check_skew(D);
  const bool pds_shape = !skew && q % 4 == 1 && check_symmetric(D) && 2 * rep.k + 1 == q;
  const bool use_skew_shape = skew || (!pds_shape && q % 4 == 3);
  double dev = 0.0;
  for (const auto& s : sums) {
    double d;
    int sign;
    if (use_skew_shape) {
      d = std::max(std::abs(s.real() + 0.5), std::abs(std::abs(s.imag()) - root / 2));
      sign = s.imag() >= 0 ? 1 : -1;
    } else {
      const double plus = std::abs(s.real() - (-1 + root) / 2);
      const double minus = std::abs(s.real() - (-1 - root) / 2);
      d = std::max(std::abs(s.imag()), std::min(plus, minus));
      sign = plus <= minus ? 1 : -1;
    }
    dev = std::max(dev, d);
    rep.sign_pattern.push_back(sign);
  }
  rep.max_abs_deviation = dev;
  const double verdict_tol = character_verdict_tolerance(q);
  if (dev > gauss_tolerance(q) && dev <= verdict_tol) {
    rep.warnings.push_back("character deviation " + std::to_string(dev) +
                           " exceeds 1e-6 sqrt(q); possible precision loss");
  }
  if (skew && dev <= verdict_tol) {
    rep.verdict = Verdict::SkewHDS;
    rep.lambda = (q - 3) / 4;
  } else if (pds_shape && dev <= verdict_tol) {
    rep.verdict = Verdict::PaleyPDS;
    rep.lambda = (q - 5) / 4;
    rep.mu = (q - 1) / 4;
  }
  return rep;
}

VerificationReport verify(const CandidateSet& D, Method method, unsigned threads) {
  auto brute = [&] {
    const std::uint64_t q = D.field().order();
    if (q % 4 == 3) return verify_skew_hds_brute(D, threads);
    if (q % 4 == 1) return verify_paley_pds_brute(D, threads);
    throw Error(Errc::PreconditionFailed, "brute-force verification needs odd q");
  };
  switch (method) {
    case Method::BruteForce: return brute();
    case Method::CharacterSums: return verify_by_characters(D);
    case Method::Both: break;
  }
  VerificationReport rep = brute();
  rep.method = Method::Both;
  if (!D.is_class_union()) {
    rep.warnings.push_back("character method skipped: the set is not a union of cyclotomic classes");
    return rep;
  }
  const VerificationReport chars = verify_by_characters(D);
  rep.max_abs_deviation = chars.max_abs_deviation;
  rep.sign_pattern = chars.sign_pattern;
  rep.warnings.insert(rep.warnings.end(), chars.warnings.begin(), chars.warnings.end());
  if (chars.verdict != rep.verdict) {
    rep.warnings.push_back(std::string("brute force says ") + verdict_name(rep.verdict) +
                           " but characters say " + verdict_name(chars.verdict));
    rep.verdict = Verdict::Neither;
  }
  return rep;
}

SignPatternReport sign_pattern_check(const CandidateSet& D) {
  const auto* prov = std::get_if<CaseAProvenance>(&D.provenance());
  if (prov == nullptr || prov->p % 4 != 3 || !D.is_class_union()) {
    throw Error(Errc::PreconditionFailed, "sign pattern needs a case-A set with p = 3 (mod 4)");
  }
  std::uint64_t M = 1;
  for (unsigned i = 0; i < prov->m; ++i) M *= prov->p1;
  const std::uint32_t N = D.scheme().order();
  const auto sums = restricted_sums(D.scheme(), D);
  const IndexSet& I = *D.index_set();

  SignPatternReport rep;
  for (std::uint32_t a = 0; a < N; ++a) {
    std::optional<std::uint32_t> hit;
    for (auto i : I) {
      if ((a + i) % M != 0) continue;
      if (hit) throw Error(Errc::PatternMismatch, "i_a is not unique for a = " + std::to_string(a));
      hit = i;
    }
    if (!hit) throw Error(Errc::PatternMismatch, "no i_a for a = " + std::to_string(a));
    const auto j = static_cast<std::uint32_t>((a + *hit) / M);
    rep.i_a.push_back(*hit);
    rep.j_a.push_back(j);
    rep.predicted.push_back((prov->m + j) % 2 == 0 ? 1 : -1);
    const double im = sums[a].imag();
    rep.observed.push_back(im > 0 ? 1 : (im < 0 ? -1 : 0));
  }
  rep.global_constant = rep.observed[0] * rep.predicted[0];
  for (std::uint32_t a = 0; a < N; ++a) {
    if (rep.global_constant == 0 || rep.observed[a] * rep.predicted[a] != rep.global_constant) {
      throw Error(Errc::PatternMismatch, "sign at a = " + std::to_string(a) +
                                             " disagrees with the global constant");
    }
  }
  return rep;
}

}  // namespace cyclotome
