#include "cyclotome/charsums.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "cyclotome/error.hpp"

namespace cyclotome {

namespace {

using cplx = std::complex<double>;

cplx unit_root(std::int64_t k, std::int64_t n) {
  const std::int64_t r = ((k % n) + n) % n;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n));
}

cplx sqrt_neg(double n) { return {0.0, std::sqrt(n)}; }

std::uint32_t reduce(std::int64_t j, std::uint32_t N) {
  const auto n = static_cast<std::int64_t>(N);
  return static_cast<std::uint32_t>(((j % n) + n) % n);
}

// chi^v(-1) for the dlog character of order N: (-1)^{v (q-1)/N}.
double chi_minus_one(std::uint64_t v, std::uint64_t q, std::uint32_t N) {
  return ((v % 2) * (((q - 1) / N) % 2)) % 2 == 0 ? 1.0 : -1.0;
}

std::vector<cplx> all_gauss_sums(const CyclotomicScheme& scheme) {
  std::vector<cplx> g(scheme.order());
  for (std::uint32_t j = 0; j < scheme.order(); ++j) g[j] = gauss_sum(scheme, j).value;
  return g;
}

}  // namespace

const char* prediction_case_name(PredictionCase c) noexcept {
  switch (c) {
    case PredictionCase::Index2_7mod8: return "Index2_7mod8";
    case PredictionCase::Index2_3mod8: return "Index2_3mod8";
    case PredictionCase::Quadratic: return "Quadratic";
    case PredictionCase::None: break;
  }
  return "None";
}

const char* exponent_kind_name(ExponentKind k) noexcept {
  switch (k) {
    case ExponentKind::Trivial: return "trivial";
    case ExponentKind::OddPower: return "odd";
    case ExponentKind::EvenPower: return "even";
    case ExponentKind::Quadratic: return "quadratic";
  }
  return "?";
}

double gauss_tolerance(std::uint64_t q) noexcept { return 1e-6 * std::sqrt(static_cast<double>(q)); }

GaussSumRecord gauss_sum(const CyclotomicScheme& scheme, std::int64_t j) {
  const std::uint32_t N = scheme.order();
  GaussSumRecord rec;
  rec.j = reduce(j, N);
  const auto eta = scheme.periods();
  cplx sum = 0.0;
  for (std::uint32_t i = 0; i < N; ++i) {
    sum += unit_root(static_cast<std::int64_t>(std::uint64_t{rec.j} * i % N), N) * eta[i];
  }
  rec.value = sum;
  rec.abs_error_bound = 8.0 * static_cast<double>(scheme.field().order() + N) * DBL_EPSILON;
  return rec;
}

IdentityReport check_basic_identities(const CyclotomicScheme& scheme) {
  const std::uint32_t N = scheme.order();
  const std::uint64_t q = scheme.field().order();
  const std::uint32_t p = scheme.field().p();
  const auto g = all_gauss_sums(scheme);
  IdentityReport rep;
  rep.tolerance = gauss_tolerance(q);

  auto fail = [&](const char* which, std::uint32_t j, double dev) {
    throw Error(Errc::IdentityViolation, std::string(which) + " fails at j = " + std::to_string(j) +
                                             " (deviation " + std::to_string(dev) + ")");
  };

  rep.trivial_deviation = std::abs(g[0] + 1.0);
  if (rep.trivial_deviation > rep.tolerance) fail("g(chi^0) = -1", 0, rep.trivial_deviation);
  for (std::uint32_t j = 0; j < N; ++j) {
    if (j != 0) {
      const double dn = std::abs(std::abs(g[j]) - std::sqrt(static_cast<double>(q)));
      rep.norm_deviation = std::max(rep.norm_deviation, dn);
      if (dn > rep.tolerance) fail("|g|^2 = q", j, dn);
    }
    const double df = std::abs(g[static_cast<std::uint64_t>(j) * p % N] - g[j]);
    rep.frobenius_deviation = std::max(rep.frobenius_deviation, df);
    if (df > rep.tolerance) fail("g(chi^p) = g(chi)", j, df);
    const double dc = std::abs(g[(N - j) % N] - chi_minus_one(j, q, N) * std::conj(g[j]));
    rep.conjugate_deviation = std::max(rep.conjugate_deviation, dc);
    if (dc > rep.tolerance) fail("g(chi^-1) = chi(-1) conj g(chi)", j, dc);
  }
  return rep;
}

BCData solve_bc(std::uint64_t p1, std::uint64_t p, unsigned h, std::uint64_t f) {
  if (f < h || (f - h) % 2 != 0) {
    throw Error(Errc::NoSolution, "(f - h)/2 is not a nonnegative integer");
  }
  std::int64_t target = 4;
  for (unsigned i = 0; i < h; ++i) {
    if (target > std::numeric_limits<std::int64_t>::max() / static_cast<std::int64_t>(p)) {
      throw Error(Errc::Overflow, "4 p^h exceeds 64 bits");
    }
    target *= static_cast<std::int64_t>(p);
  }
  const auto sp = static_cast<std::int64_t>(p);
  const auto sp1 = static_cast<std::int64_t>(p1);
  const std::int64_t scale = static_cast<std::int64_t>(pow_mod(p, (f - h) / 2, p1));
  auto mod = [](std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; };

  std::vector<std::pair<std::int64_t, std::int64_t>> hits;
  for (std::int64_t c = 1; sp1 * c * c <= target; ++c) {
    const std::int64_t rem = target - sp1 * c * c;
    auto b = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(rem))));
    while (b * b > rem) --b;
    while ((b + 1) * (b + 1) <= rem) ++b;
    if (b * b != rem) continue;
    for (std::int64_t bs : {b, -b}) {
      if (bs == 0 || mod(bs, sp) == 0 || mod(c, sp) == 0) continue;
      if (mod(bs * scale, sp1) != mod(-2, sp1)) continue;
      hits.emplace_back(bs, -c);
      hits.emplace_back(bs, c);
    }
  }
  if (hits.empty()) {
    throw Error(Errc::NoSolution, "no (b, c) with b^2 + " + std::to_string(p1) + " c^2 = " +
                                      std::to_string(target) + " meets the congruences");
  }
  BCData out;
  out.b = hits.front().first;
  for (const auto& [b, c] : hits) {
    if (b != out.b) throw Error(Errc::NoSolution, "b is not uniquely determined");
    out.c_candidates.push_back(c);
  }
  std::sort(out.c_candidates.begin(), out.c_candidates.end());
  out.c_candidates.erase(std::unique(out.c_candidates.begin(), out.c_candidates.end()),
                         out.c_candidates.end());
  out.h = h;
  out.p = p;
  out.p1 = p1;
  out.f = f;
  return out;
}

std::uint64_t IndexTwoParams::N() const {
  std::uint64_t n = 2;
  for (unsigned i = 0; i < m; ++i) n *= p1;
  return n;
}

IndexTwoParams IndexTwoParams::from(const CaseAParams& a) {
  IndexTwoParams out;
  out.p1 = a.p1;
  out.m = a.m;
  out.p = a.p;
  out.f = a.f;
  out.h = class_number(a.p1);
  out.kind = PredictionCase::Index2_7mod8;
  try {
    out.bc = solve_bc(a.p1, a.p, out.h, a.f);
  } catch (const Error& e) {
    if (e.code() != Errc::NoSolution && e.code() != Errc::Overflow) throw;
  }
  return out;
}

IndexTwoParams IndexTwoParams::from(const CaseBParams& b) {
  IndexTwoParams out;
  out.p1 = b.p1;
  out.m = 1;
  out.p = b.p;
  out.f = b.f;
  out.h = b.h;
  out.kind = PredictionCase::Index2_3mod8;
  out.bc = solve_bc(b.p1, b.p, b.h, b.f);
  return out;
}

std::vector<ClosedFormValue> closed_form_index2(const IndexTwoParams& params, ExponentKind kind,
                                                unsigned t) {
  const auto p = static_cast<double>(params.p);
  const auto p1 = static_cast<double>(params.p1);
  const double f = static_cast<double>(params.f);
  const double h = params.h;
  const bool p3mod4 = params.p % 4 == 3;
  const bool seven = params.kind == PredictionCase::Index2_7mod8;
  if (params.kind == PredictionCase::None) throw Error(Errc::CaseMismatch, "no index-2 case selected");
  auto sign = [](std::uint64_t e) { return e % 2 == 0 ? 1.0 : -1.0; };
  auto need_bc = [&]() -> const BCData& {
    if (!params.bc) throw Error(Errc::CaseMismatch, "no (b, c) data for these parameters");
    return *params.bc;
  };
  auto theta = [&](std::int64_t c) {
    return (static_cast<double>(need_bc().b) + static_cast<double>(c) * sqrt_neg(p1)) / 2.0;
  };
  std::uint64_t p1t = 1;
  for (unsigned i = 0; i < t; ++i) p1t *= params.p1;

  std::vector<ClosedFormValue> out;
  switch (kind) {
    case ExponentKind::Trivial:
      out.push_back({cplx(-1.0, 0.0), 0});
      break;
    case ExponentKind::OddPower: {
      if (t >= params.m) throw Error(Errc::CaseMismatch, "odd-power formula needs t < m");
      if (t > 0 && !p3mod4) throw Error(Errc::CaseMismatch, "t > 0 needs p = 3 (mod 4)");
      const cplx sqrt_pstar = p3mod4 ? sqrt_neg(p) : cplx(std::sqrt(p), 0.0);
      const std::uint64_t half_pm1 = (params.p - 1) / 2;
      if (seven) {
        const double s = t == 0 ? sign(half_pm1 * params.m) : sign(params.m);
        out.push_back({s * sqrt_pstar * std::pow(p, (f - 1) / 2), 0});
      } else {
        const double s = t == 0 ? sign(half_pm1 * (params.m + 1)) : sign(params.m + 1);
        for (auto c : need_bc().c_candidates) {
          out.push_back({s * sqrt_pstar * std::pow(p, (f - 1) / 2 - h * static_cast<double>(p1t)) *
                             std::pow(theta(c), 2.0 * static_cast<double>(p1t)),
                         c});
        }
      }
      break;
    }
    case ExponentKind::EvenPower: {
      if (t >= params.m) throw Error(Errc::CaseMismatch, "even-power formula needs t < m");
      if (!p3mod4) throw Error(Errc::CaseMismatch, "even-power formula needs p = 3 (mod 4)");
      for (auto c : need_bc().c_candidates) {
        out.push_back({std::pow(p, (f - static_cast<double>(p1t) * h) / 2) *
                           std::pow(theta(c), static_cast<double>(p1t)),
                       c});
      }
      break;
    }
    case ExponentKind::Quadratic: {
      if (!p3mod4) throw Error(Errc::CaseMismatch, "quadratic formula needs p = 3 (mod 4)");
      out.push_back({sign((params.f - 1) / 2) * std::pow(p, (f - 1) / 2) * sqrt_neg(p), 0});
      break;
    }
  }
  return out;
}

ClosedFormReport compare_with_closed_form(const CyclotomicScheme& scheme,
                                          const IndexTwoParams& params, bool strict) {
  const std::uint32_t N = scheme.order();
  const std::uint64_t q = scheme.field().order();
  if (N != params.N() || scheme.field().p() != params.p || scheme.field().degree() != params.f) {
    throw Error(Errc::CaseMismatch, "scheme is not the order-" + std::to_string(params.N()) +
                                        " cyclotomy of F_{" + std::to_string(params.p) + "^" +
                                        std::to_string(params.f) + "}");
  }
  ClosedFormReport rep;
  rep.kind = params.kind;
  rep.tolerance = gauss_tolerance(q);
  const auto g = all_gauss_sums(scheme);
  std::uint64_t p1m = 1;
  for (unsigned i = 0; i < params.m; ++i) p1m *= params.p1;

  struct Pending {
    ClosedFormRow row;
    std::vector<ClosedFormValue> candidates;
  };
  std::vector<Pending> pending;
  for (std::uint32_t j = 0; j < N; ++j) {
    Pending item;
    item.row.j = j;
    item.row.computed = g[j];
    std::uint64_t base = 0;
    if (j == 0) {
      item.row.kind = ExponentKind::Trivial;
    } else {
      const std::uint64_t d = std::gcd<std::uint64_t>(j, N);
      unsigned t = 0;
      std::uint64_t odd = d % 2 == 0 ? d / 2 : d;
      while (odd > 1) {
        odd /= params.p1;
        ++t;
      }
      if (d == p1m) {
        item.row.kind = ExponentKind::Quadratic;
        t = params.m;
      } else {
        item.row.kind = d % 2 == 0 ? ExponentKind::EvenPower : ExponentKind::OddPower;
      }
      item.row.t = t;
      base = d;
      // j = epsilon p^r base (mod N); the index-2 hypothesis guarantees a hit.
      std::uint64_t v = base % N;
      bool found = false;
      for (unsigned r = 0; r < params.f && !found; ++r) {
        if (v == j) {
          item.row.epsilon = 1;
          item.row.r = r;
          found = true;
        } else if ((N - v) % N == j) {
          item.row.epsilon = -1;
          item.row.r = r;
          found = true;
        } else {
          v = v * params.p % N;
        }
      }
      if (!found) {
        throw Error(Errc::CaseMismatch, "exponent " + std::to_string(j) + " is not +-p^r times a base");
      }
      base = v;
    }
    try {
      item.candidates = closed_form_index2(params, item.row.kind, item.row.t);
    } catch (const Error& e) {
      if (e.code() != Errc::CaseMismatch) throw;
    }
    if (item.row.epsilon < 0) {
      const double s = chi_minus_one(base, q, N);
      for (auto& c : item.candidates) c.value = s * std::conj(c.value);
    }
    pending.push_back(std::move(item));
  }

  // Pick the c (for chi) that every c-dependent row accepts.
  std::vector<std::int64_t> c_pool;
  if (params.bc) c_pool = params.bc->c_candidates;
  for (const auto& item : pending) {
    bool c_dependent = false;
    std::vector<std::int64_t> ok;
    for (const auto& cand : item.candidates) {
      if (cand.c == 0) continue;
      c_dependent = true;
      if (std::abs(cand.value - item.row.computed) <= rep.tolerance) ok.push_back(cand.c);
    }
    if (!c_dependent) continue;
    std::erase_if(c_pool, [&](std::int64_t c) { return std::find(ok.begin(), ok.end(), c) == ok.end(); });
  }
  rep.c = c_pool.size() == 1 ? c_pool.front() : 0;

  rep.all_matched = true;
  for (auto& item : pending) {
    auto& row = item.row;
    const ClosedFormValue* chosen = nullptr;
    for (const auto& cand : item.candidates) {
      if (cand.c == 0 || cand.c == rep.c) {
        chosen = &cand;
        break;
      }
    }
    if (chosen == nullptr && !item.candidates.empty()) {
      // No globally consistent c: report the nearest candidate as a mismatch.
      chosen = &*std::min_element(item.candidates.begin(), item.candidates.end(),
                                  [&](const auto& a, const auto& b) {
                                    return std::abs(a.value - row.computed) < std::abs(b.value - row.computed);
                                  });
    }
    if (chosen != nullptr) {
      row.predicted = chosen->value;
      row.c = chosen->c;
      row.deviation = std::abs(chosen->value - row.computed);
      row.matched = row.deviation <= rep.tolerance && (row.c == 0 || row.c == rep.c);
      rep.max_deviation = std::max(rep.max_deviation, row.deviation);
      rep.all_matched = rep.all_matched && row.matched;
    }
    rep.rows.push_back(row);
  }
  if (strict && !rep.all_matched) {
    for (const auto& row : rep.rows) {
      if (row.predicted && !row.matched) {
        throw Error(Errc::ClosedFormMismatch, "g(chi^" + std::to_string(row.j) +
                                                  ") deviates from the closed form by " +
                                                  std::to_string(row.deviation));
      }
    }
  }
  return rep;
}

DavenportHasseReport davenport_hasse_check(std::uint32_t p, unsigned f_base, unsigned s,
                                           std::uint32_t N, std::uint64_t budget) {
  if (s == 0) throw Error(Errc::InvalidInput, "lift degree must be positive");
  auto base = std::make_shared<const FiniteField>(build_field(p, f_base, budget));
  auto lift = std::make_shared<const FiniteField>(build_field(p, f_base * s, budget));
  const FiniteField& F = *base;
  const FiniteField& E = *lift;
  const std::uint64_t qF = F.order();
  const std::uint64_t qE = E.order();
  if ((qF - 1) % N != 0) {
    throw Error(Errc::NotDivisor, std::to_string(N) + " does not divide " + std::to_string(qF - 1));
  }
  const std::uint64_t M = (qE - 1) / (qF - 1);

  // Root alpha of F's modulus inside the order-qF subfield of E.
  auto eval_modulus = [&](Code y) {
    Code acc = 0;
    const auto& mod = F.modulus();
    for (std::size_t i = mod.size(); i-- > 0;) acc = E.add(E.mul(acc, y), static_cast<Code>(mod[i]));
    return acc;
  };
  Code alpha = 0;
  bool found = eval_modulus(0) == 0;
  for (std::uint64_t k = 0; k + 1 < qF && !found; ++k) {
    const Code y = E.exp(static_cast<std::int64_t>(k * M));
    if (eval_modulus(y) == 0) {
      alpha = y;
      found = true;
    }
  }
  if (!found) throw std::logic_error("base modulus has no root in the extension");

  // beta = image of gamma_F; Norm(gamma_E) = gamma_E^M = gamma_F^e.
  Code beta = 0;
  {
    const auto d = F.digits(F.gamma());
    Code power = 1;
    for (auto coeff : d) {
      for (std::uint32_t c = 0; c < coeff; ++c) beta = E.add(beta, power);
      power = E.mul(power, alpha);
    }
  }
  const std::uint64_t L = E.dlog(beta);
  if (L % M != 0) throw std::logic_error("embedded generator is outside the subfield");
  const std::uint64_t ell = L / M;
  std::uint64_t e = 1;
  if (qF > 2) {
    std::int64_t t0 = 0, t1 = 1, r0 = static_cast<std::int64_t>(qF - 1), r1 = static_cast<std::int64_t>(ell % (qF - 1));
    while (r1 != 0) {
      const std::int64_t quot = r0 / r1;
      std::tie(t0, t1) = std::make_pair(t1, t0 - quot * t1);
      std::tie(r0, r1) = std::make_pair(r1, r0 - quot * r1);
    }
    if (r0 != 1) throw std::logic_error("embedded generator is not primitive");
    e = static_cast<std::uint64_t>(((t0 % static_cast<std::int64_t>(qF - 1)) + static_cast<std::int64_t>(qF - 1)) %
                                   static_cast<std::int64_t>(qF - 1));
  }

  const auto scheme_F = build_scheme(base, N);
  const auto scheme_E = build_scheme(lift, N);
  DavenportHasseReport rep;
  rep.p = p;
  rep.f_base = f_base;
  rep.s = s;
  rep.N = N;
  rep.norm_exponent = e;
  rep.tolerance = gauss_tolerance(qE);
  const double sign = (s - 1) % 2 == 0 ? 1.0 : -1.0;
  for (std::uint32_t j = 0; j < N; ++j) {
    DavenportHasseRow row;
    row.j = j;
    const auto neg_j = static_cast<std::int64_t>(N - j);
    row.lifted = gauss_sum(*scheme_E, neg_j * static_cast<std::int64_t>(e % N)).value;
    row.base_power = sign * std::pow(gauss_sum(*scheme_F, neg_j).value, static_cast<int>(s));
    row.deviation = std::abs(row.lifted - row.base_power);
    rep.max_deviation = std::max(rep.max_deviation, row.deviation);
    rep.rows.push_back(row);
  }
  rep.holds = rep.max_deviation <= rep.tolerance;
  return rep;
}

std::vector<std::complex<double>> restricted_sums(const CyclotomicScheme& scheme,
                                                  const CandidateSet& set) {
  if (&set.scheme() != &scheme) throw Error(Errc::SchemeMismatch, "set was built on a different scheme");
  if (!set.is_class_union()) {
    throw Error(Errc::SchemeMismatch, "set is not a union of cyclotomic classes of this scheme");
  }
  const std::uint32_t N = scheme.order();
  const auto eta = scheme.periods();
  std::vector<std::complex<double>> out(N, 0.0);
  for (std::uint32_t a = 0; a < N; ++a) {
    for (auto i : *set.index_set()) out[a] += eta[(a + i) % N];
  }
  return out;
}

}  // namespace cyclotome
