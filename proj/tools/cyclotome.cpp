#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "cyclotome/charsums.hpp"
#include "cyclotome/construct.hpp"
#include "cyclotome/error.hpp"
#include "cyclotome/serialize.hpp"
#include "cyclotome/verify.hpp"

namespace cy = cyclotome;
using nlohmann::json;

namespace {

constexpr int kExitVerified = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitInvalid = 2;

struct Options {
  std::uint64_t budget = 0;  // 0: take CYCLOTOME_BUDGET or the default
  bool json_out = false;

  std::string search_case;
  std::uint64_t p1 = 0, p1_max = 0, p = 0, p_max = 0;
  unsigned m = 0, m_max = 0, s = 1;

  std::string construct_case;
  std::string index_set;
  std::optional<std::uint64_t> random_seed;
  std::uint64_t seed = cy::kDefaultSeed;
  std::string out;

  std::string file;
  std::string method = "both";
  unsigned threads = 1;

  std::uint32_t gp = 0, gf = 0, gN = 0;
  std::string closed_form;
};

std::uint64_t resolve_budget(const Options& o) {
  if (o.budget != 0) return o.budget;
  if (const char* env = std::getenv("CYCLOTOME_BUDGET"); env != nullptr && *env != '\0') {
    std::size_t used = 0;
    std::uint64_t value = 0;
    try {
      value = std::stoull(env, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || env[used] != '\0' || value == 0) {
      throw cy::Error(cy::Errc::InvalidInput, std::string("CYCLOTOME_BUDGET is not a positive integer: ") + env);
    }
    return value;
  }
  return cy::kDefaultBudget;
}

std::vector<std::uint32_t> parse_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw cy::Error(cy::Errc::InvalidInput, "bad index-set entry \"" + item + "\"");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

std::string json_complex(std::complex<double> z) {
  std::ostringstream os;
  os << std::setprecision(12) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

int cmd_search(const Options& o) {
  if (o.search_case == "A") {
    const std::uint64_t p1_hi = o.p1 ? o.p1 : o.p1_max;
    const unsigned m_hi = o.m ? o.m : o.m_max;
    auto rows = cy::search_case_A(p1_hi, m_hi, o.p_max);
    std::erase_if(rows, [&](const cy::CaseAParams& r) { return (o.p1 && r.p1 != o.p1) || (o.m && r.m != o.m); });
    if (o.json_out) {
      std::cout << cy::case_a_json(rows) << "\n";
    } else {
      std::cout << std::setw(8) << "p1" << std::setw(4) << "m" << std::setw(8) << "p" << std::setw(6) << "f"
                << "  kind\n";
      for (const auto& r : rows) {
        std::cout << std::setw(8) << r.p1 << std::setw(4) << r.m << std::setw(8) << r.p << std::setw(6) << r.f
                  << "  " << (r.pds_flag ? "PaleyPDS" : "SkewHDS") << "\n";
      }
    }
    return kExitVerified;
  }
  const auto rows = cy::search_case_B(o.p1_max, o.p_max);
  if (o.json_out) {
    std::cout << cy::case_b_json(rows) << "\n";
  } else {
    std::cout << std::setw(8) << "p1" << std::setw(8) << "p" << std::setw(4) << "h" << std::setw(6) << "f\n";
    for (const auto& r : rows) {
      std::cout << std::setw(8) << r.p1 << std::setw(8) << r.p << std::setw(4) << r.h << std::setw(6) << r.f << "\n";
    }
  }
  return kExitVerified;
}

int cmd_construct(const Options& o) {
  const std::uint64_t budget = resolve_budget(o);
  std::optional<cy::CandidateSet> set;
  if (o.construct_case == "A") {
    const auto params = cy::CaseAParams::make(o.p1, o.m, o.p);
    const std::uint32_t N = static_cast<std::uint32_t>(params.N());
    cy::IndexSet I;
    if (!o.index_set.empty()) {
      I = cy::IndexSet(parse_list(o.index_set), N);
    } else {
      I = cy::random_transversal(params.p1, params.m, o.random_seed.value_or(0));
    }
    set.emplace(cy::construct_case_A(params, o.s, I, budget, o.seed));
  } else {
    set.emplace(cy::construct_case_B(cy::CaseBParams::make(o.p1, o.p), budget, o.seed));
  }
  if (!o.out.empty()) cy::save_difference_set(o.out, *set);
  if (o.json_out) {
    json j{{"v", set->field().order()},
           {"k", set->size()},
           {"N", set->scheme().order()},
           {"I", set->index_set()->values()},
           {"provenance", cy::provenance_tag(set->provenance())}};
    if (!o.out.empty()) j["out"] = o.out;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "v = " << set->field().order() << ", k = " << set->size() << ", provenance "
              << cy::provenance_tag(set->provenance()) << "\n";
  }
  return kExitVerified;
}

int cmd_verify(const Options& o) {
  const std::uint64_t budget = resolve_budget(o);
  cy::Method method = cy::Method::Both;
  if (o.method == "brute") method = cy::Method::BruteForce;
  if (o.method == "chars") method = cy::Method::CharacterSums;

  const auto start = std::chrono::steady_clock::now();
  auto loaded = cy::load_difference_set(o.file, budget);
  cy::VerificationReport report;
  if (method == cy::Method::CharacterSums && !loaded.set.is_class_union()) {
    report.method = method;
    report.v = loaded.set.field().order();
    report.k = loaded.set.size();
    report.warnings.push_back("character method not applicable: the set is not a union of cyclotomic classes");
  } else {
    report = cy::verify(loaded.set, method, o.threads);
  }
  report.warnings.insert(report.warnings.begin(), loaded.warnings.begin(), loaded.warnings.end());
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string text = cy::report_json(report, wall, o.threads);
  if (!o.out.empty()) {
    std::ofstream out(o.out);
    if (!out) throw cy::Error(cy::Errc::InvalidInput, "cannot open " + o.out + " for writing");
    out << text << "\n";
  }
  if (o.json_out) {
    std::cout << text << "\n";
  } else {
    std::cout << cy::verdict_name(report.verdict) << "  v = " << report.v << ", k = " << report.k;
    if (report.lambda) std::cout << ", lambda = " << *report.lambda;
    if (report.mu) std::cout << ", mu = " << *report.mu;
    std::cout << "  [" << cy::method_name(report.method) << ", " << std::fixed << std::setprecision(3) << wall
              << " s]\n";
    for (const auto& w : report.warnings) std::cout << "warning: " << w << "\n";
  }
  return report.verdict == cy::Verdict::Neither ? kExitRefuted : kExitVerified;
}

std::shared_ptr<const cy::FiniteField> make_field(const Options& o) {
  return std::make_shared<const cy::FiniteField>(cy::build_field(o.gp, o.gf, resolve_budget(o), o.seed));
}

cy::IndexTwoParams closed_form_params(const Options& o) {
  if (o.closed_form == "B") {
    if (o.gN % 2 != 0) throw cy::Error(cy::Errc::CaseMismatch, "case B needs N = 2 p1");
    return cy::IndexTwoParams::from(cy::CaseBParams::make(o.gN / 2, o.gp));
  }
  // N = 2 p1^m.
  std::uint64_t rest = o.gN / 2;
  const auto factors = cy::factorize(rest);
  if (o.gN % 2 != 0 || factors.size() != 1) throw cy::Error(cy::Errc::CaseMismatch, "case A needs N = 2 p1^m");
  return cy::IndexTwoParams::from(cy::CaseAParams::make(factors[0].first, factors[0].second, o.gp));
}

int cmd_gauss(const Options& o) {
  auto scheme = cy::build_scheme(make_field(o), o.gN);
  json rows = json::array();
  std::optional<cy::ClosedFormReport> cf;
  if (!o.closed_form.empty()) cf = cy::compare_with_closed_form(*scheme, closed_form_params(o), false);
  for (std::uint32_t j = 0; j < o.gN; ++j) {
    const auto rec = cy::gauss_sum(*scheme, j);
    json row{{"j", j},
             {"re", rec.value.real()},
             {"im", rec.value.imag()},
             {"abs2", std::norm(rec.value)},
             {"prediction_case", cy::prediction_case_name(rec.prediction_case)},
             {"matched", nullptr}};
    if (rec.prediction) {
      row["predicted_re"] = rec.prediction->real();
      row["predicted_im"] = rec.prediction->imag();
      row["matched"] = std::abs(*rec.prediction - rec.value) <= cy::gauss_tolerance(scheme->field().order());
    }
    if (cf) {
      const auto& r = cf->rows[j];
      row["kind"] = cy::exponent_kind_name(r.kind);
      if (r.predicted) {
        row["predicted_re"] = r.predicted->real();
        row["predicted_im"] = r.predicted->imag();
        row["matched"] = r.matched;
        row["deviation"] = r.deviation;
        if (r.c != 0) row["c"] = r.c;
      }
    }
    rows.push_back(row);
  }
  if (o.json_out) {
    json out{{"p", o.gp}, {"f", o.gf}, {"N", o.gN}, {"rows", rows}};
    if (cf) {
      out["c"] = cf->c;
      out["all_matched"] = cf->all_matched;
      out["max_deviation"] = cf->max_deviation;
      out["tolerance"] = cf->tolerance;
    }
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& row : rows) {
      std::cout << std::setw(5) << row["j"].get<int>() << "  "
                << std::setw(40) << json_complex({row["re"].get<double>(), row["im"].get<double>()})
                << "  |g|^2 = " << std::setprecision(10) << row["abs2"].get<double>();
      if (!row["matched"].is_null()) std::cout << (row["matched"].get<bool>() ? "  matched" : "  MISMATCH");
      std::cout << "\n";
    }
    if (cf) std::cout << "c = " << cf->c << (cf->all_matched ? ", all rows matched\n" : ", some rows unmatched\n");
  }
  if (cf && !cf->all_matched) return kExitRefuted;
  return kExitVerified;
}

int cmd_periods(const Options& o) {
  auto scheme = cy::build_scheme(make_field(o), o.gN);
  json rows = json::array();
  const auto eta = scheme->periods();
  for (std::uint32_t i = 0; i < o.gN; ++i) rows.push_back({{"i", i}, {"re", eta[i].real()}, {"im", eta[i].imag()}});
  if (o.json_out) {
    std::cout << json{{"p", o.gp}, {"f", o.gf}, {"N", o.gN}, {"periods", rows}}.dump(2) << "\n";
  } else {
    for (std::uint32_t i = 0; i < o.gN; ++i) {
      std::cout << std::setw(5) << i << "  " << json_complex(eta[i]) << "\n";
    }
  }
  return kExitVerified;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Cyclotomic constructions of skew Hadamard difference sets and Paley type PDS"};
  app.set_version_flag("--version", std::string(cy::tool_version()));
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--budget", o.budget, "Largest field order with tables (default: $CYCLOTOME_BUDGET or 2^25)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", o.json_out, "Print JSON on stdout");

  auto* search = app.add_subcommand("search", "List admissible parameters");
  search->add_option("case", o.search_case, "A or B")->required()->check(CLI::IsMember({"A", "B"}));
  search->add_option("--p1", o.p1, "Exact p1 (case A)");
  search->add_option("--p1-max", o.p1_max, "Upper bound on p1");
  search->add_option("--m", o.m, "Exact m (case A)");
  search->add_option("--m-max", o.m_max, "Upper bound on m (case A)");
  search->add_option("--p-max", o.p_max, "Upper bound on p")->required();
  search->add_flag("--json", o.json_out, "Print JSON");

  auto* construct = app.add_subcommand("construct", "Build a difference set and write it to a file");
  construct->add_option("case", o.construct_case, "A or B")->required()->check(CLI::IsMember({"A", "B"}));
  construct->add_option("--p1", o.p1)->required();
  construct->add_option("--m", o.m, "Case A exponent");
  construct->add_option("--p", o.p)->required();
  construct->add_option("--s", o.s, "Case A lift degree (odd)");
  auto* iset = construct->add_option("--index-set", o.index_set, "Comma-separated I (case A)");
  construct->add_option("--random-seed", o.random_seed, "Seed for a random transversal (case A)")->excludes(iset);
  construct->add_option("--seed", o.seed, "Seed of the modulus search");
  construct->add_option("--out", o.out, "Output file");
  construct->add_flag("--json", o.json_out, "Print JSON");

  auto* verify = app.add_subcommand("verify", "Verify a difference-set file");
  verify->add_option("file", o.file)->required();
  verify->add_option("--method", o.method)->check(CLI::IsMember({"brute", "chars", "both"}));
  verify->add_option("--threads", o.threads)->check(CLI::Range(1u, 1024u));
  verify->add_option("--out", o.out, "Report file");
  verify->add_flag("--json", o.json_out, "Print JSON");

  auto* gauss = app.add_subcommand("gauss", "Tabulate Gauss sums of order N over F_{p^f}");
  gauss->add_option("p", o.gp)->required();
  gauss->add_option("f", o.gf)->required()->check(CLI::PositiveNumber);
  gauss->add_option("N", o.gN)->required();
  gauss->add_option("--closed-form", o.closed_form, "Compare with the index-2 closed forms")
      ->check(CLI::IsMember({"A", "B"}));
  gauss->add_option("--seed", o.seed, "Seed of the modulus search");
  gauss->add_flag("--json", o.json_out, "Print JSON");

  auto* periods = app.add_subcommand("periods", "Dump the Gauss periods of order N over F_{p^f}");
  periods->add_option("p", o.gp)->required();
  periods->add_option("f", o.gf)->required()->check(CLI::PositiveNumber);
  periods->add_option("N", o.gN)->required();
  periods->add_option("--seed", o.seed, "Seed of the modulus search");
  periods->add_flag("--json", o.json_out, "Print JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*search) {
      if (o.search_case == "A" && !o.p1 && !o.p1_max) throw CLI::ValidationError("search A needs --p1 or --p1-max");
      if (o.search_case == "A" && !o.m && !o.m_max) o.m_max = 1;
      if (o.search_case == "B" && !o.p1_max) throw CLI::ValidationError("search B needs --p1-max");
      return cmd_search(o);
    }
    if (*construct) {
      if (o.construct_case == "A" && o.m == 0) throw CLI::ValidationError("construct A needs --m");
      if (o.construct_case == "A" && o.index_set.empty() && !o.random_seed) {
        throw CLI::ValidationError("construct A needs --index-set or --random-seed");
      }
      return cmd_construct(o);
    }
    if (*verify) return cmd_verify(o);
    if (*gauss) return cmd_gauss(o);
    return cmd_periods(o);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const cy::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitInvalid;
}
