#include "cyclotome/serialize.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "cyclotome/error.hpp"

namespace cyclotome {

using nlohmann::json;

const char* tool_version() noexcept { return CYCLOTOME_VERSION; }

namespace {

json header_of(const CandidateSet& set) {
  const FiniteField& F = set.field();
  json h;
  h["version"] = kFileVersion;
  h["p"] = F.p();
  unsigned s = 1;
  if (const auto* a = std::get_if<CaseAProvenance>(&set.provenance())) s = a->s;
  h["f"] = F.degree() / s;
  h["s"] = s;
  h["N"] = set.scheme().order();
  h["modulus"] = F.modulus();
  h["seed"] = F.seed();
  h["orientation_flipped"] = F.orientation_flipped();
  h["I"] = set.index_set() ? json(set.index_set()->values()) : json(nullptr);
  h["provenance"] = provenance_tag(set.provenance());
  std::visit(
      [&](const auto& prov) {
        using T = std::decay_t<decltype(prov)>;
        if constexpr (std::is_same_v<T, CaseAProvenance>) {
          h["params"] = {{"p1", prov.p1}, {"m", prov.m}, {"p", prov.p}, {"s", prov.s}};
        } else if constexpr (std::is_same_v<T, CaseBProvenance>) {
          h["params"] = {{"p1", prov.p1}, {"p", prov.p}, {"h", prov.h}};
        }
      },
      set.provenance());
  h["k"] = set.size();
  return h;
}

template <class T>
T field_of(const json& h, const char* key) {
  if (!h.contains(key)) throw Error(Errc::InvalidInput, std::string("header lacks \"") + key + "\"");
  try {
    return h.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(Errc::InvalidInput, std::string("header field \"") + key + "\" has the wrong type");
  }
}

Provenance provenance_of(const json& h) {
  const auto tag = field_of<std::string>(h, "provenance");
  if (tag == "UserSupplied") return UserSupplied{};
  const json params = h.value("params", json::object());
  if (tag == "CaseA") {
    return CaseAProvenance{field_of<std::uint64_t>(params, "p1"), field_of<unsigned>(params, "m"),
                           field_of<std::uint64_t>(params, "p"), field_of<unsigned>(params, "s")};
  }
  if (tag == "CaseB") {
    return CaseBProvenance{field_of<std::uint64_t>(params, "p1"), field_of<std::uint64_t>(params, "p"),
                           field_of<unsigned>(params, "h")};
  }
  throw Error(Errc::InvalidInput, "unknown provenance tag \"" + tag + "\"");
}

}  // namespace

std::string format_difference_set(const CandidateSet& set) {
  return header_of(set).dump() + "\n" + set.membership().to_hex() + "\n";
}

void write_difference_set(std::ostream& out, const CandidateSet& set) { out << format_difference_set(set); }

void save_difference_set(const std::filesystem::path& path, const CandidateSet& set) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::InvalidInput, "cannot open " + path.string() + " for writing");
  write_difference_set(out, set);
  if (!out) throw Error(Errc::InvalidInput, "failed writing " + path.string());
}

LoadedSet parse_difference_set(const std::string& text, std::uint64_t budget) {
  std::istringstream in(text);
  std::string header_line, payload;
  std::getline(in, header_line);
  std::getline(in, payload);
  while (!payload.empty() && (payload.back() == '\r' || payload.back() == ' ')) payload.pop_back();

  json h;
  try {
    h = json::parse(header_line);
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidInput, std::string("header is not valid JSON: ") + e.what());
  }
  if (!h.is_object()) throw Error(Errc::InvalidInput, "header is not a JSON object");
  if (field_of<int>(h, "version") != kFileVersion) throw Error(Errc::InvalidInput, "unsupported file version");

  const auto p = field_of<std::uint32_t>(h, "p");
  const auto f = field_of<unsigned>(h, "f");
  const auto s = field_of<unsigned>(h, "s");
  const auto N = field_of<std::uint32_t>(h, "N");
  const auto k = field_of<std::uint64_t>(h, "k");
  if (f == 0 || s == 0 || f * std::uint64_t{s} > 64) throw Error(Errc::InvalidInput, "bad degree");
  if (!is_prime(p)) throw Error(Errc::InvalidInput, "p is not prime");
  Provenance provenance = provenance_of(h);

  auto field = std::make_shared<const FiniteField>(field_from_modulus(
      p, f * s, field_of<std::vector<std::uint32_t>>(h, "modulus"), field_of<std::uint64_t>(h, "seed"),
      field_of<bool>(h, "orientation_flipped"), budget));
  SchemePtr scheme;
  try {
    scheme = build_scheme(field, N);
  } catch (const Error& e) {
    throw Error(Errc::InvalidInput, e.what());
  }
  const std::uint64_t q = field->order();
  if (payload.size() != 2 * ((q + 7) / 8)) throw Error(Errc::InvalidInput, "payload has the wrong length");
  Bitmask bits = Bitmask::from_hex(payload, q);

  LoadedSet out{CandidateSet::from_membership(scheme, bits, provenance), {}};
  if (bits.count() != k) {
    out.warnings.push_back("payload popcount " + std::to_string(bits.count()) + " differs from header k = " +
                           std::to_string(k));
  }
  if (!h.at("I").is_null()) {
    std::vector<std::uint32_t> declared = field_of<std::vector<std::uint32_t>>(h, "I");
    IndexSet I;
    try {
      I = IndexSet(std::move(declared), N);
    } catch (const Error& e) {
      throw Error(Errc::InvalidInput, e.what());
    }
    if (out.set.index_set() != I) {
      out.warnings.push_back("payload is not the union of the classes listed in the header");
      out.set = CandidateSet::from_membership(scheme, std::move(bits), UserSupplied{});
      if (out.set.is_class_union()) {
        // Keep the character method available but drop the construction tag.
        out.set = CandidateSet(scheme, *out.set.index_set(), UserSupplied{});
      }
    }
  }
  return out;
}

LoadedSet read_difference_set(std::istream& in, std::uint64_t budget) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_difference_set(buf.str(), budget);
}

LoadedSet load_difference_set(const std::filesystem::path& path, std::uint64_t budget) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidInput, "cannot open " + path.string());
  return read_difference_set(in, budget);
}

std::string report_json(const VerificationReport& r, double wall_seconds, unsigned threads, int indent) {
  json j;
  j["verdict"] = verdict_name(r.verdict);
  j["method"] = method_name(r.method);
  j["v"] = r.v;
  j["k"] = r.k;
  j["lambda"] = r.lambda ? json(*r.lambda) : json(nullptr);
  j["mu"] = r.mu ? json(*r.mu) : json(nullptr);
  j["max_abs_deviation"] = r.max_abs_deviation ? json(*r.max_abs_deviation) : json(nullptr);
  j["histogram_min"] = r.histogram_min ? json(*r.histogram_min) : json(nullptr);
  j["histogram_max"] = r.histogram_max ? json(*r.histogram_max) : json(nullptr);
  j["sign_pattern"] = r.sign_pattern;
  j["warnings"] = r.warnings;
  j["tool_version"] = tool_version();
  j["wall_time_s"] = wall_seconds;
  j["threads"] = threads;
  return j.dump(indent);
}

std::string case_a_json(const std::vector<CaseAParams>& rows, int indent) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"p1", r.p1}, {"m", r.m}, {"p", r.p}, {"f", r.f}, {"N", r.N()},
                   {"kind", r.pds_flag ? "PaleyPDS" : "SkewHDS"}});
  }
  return out.dump(indent);
}

std::string case_b_json(const std::vector<CaseBParams>& rows, int indent) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"p1", r.p1}, {"p", r.p}, {"h", r.h}, {"f", r.f}, {"N", r.N()}});
  }
  return out.dump(indent);
}

}  // namespace cyclotome
