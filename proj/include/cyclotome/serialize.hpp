#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cyclotome/candidate_set.hpp"
#include "cyclotome/numtheory.hpp"
#include "cyclotome/verify.hpp"

namespace cyclotome {

inline constexpr int kFileVersion = 1;

const char* tool_version() noexcept;

// Two lines: a compact JSON header, then the hex membership payload.
std::string format_difference_set(const CandidateSet& set);
void write_difference_set(std::ostream& out, const CandidateSet& set);
void save_difference_set(const std::filesystem::path& path, const CandidateSet& set);

struct LoadedSet {
  CandidateSet set;
  std::vector<std::string> warnings;
};

/// Rebuilds the field from the stored modulus and orientation, then the set.
///
/// Structural problems (bad JSON, missing fields, reducible modulus, payload
/// of the wrong length) throw InvalidInput. A payload that disagrees with the
/// header's I or k still loads, as a user-supplied set, and is reported in
/// `warnings` so that verification can refute it.
LoadedSet parse_difference_set(const std::string& text, std::uint64_t budget = kDefaultBudget);
LoadedSet read_difference_set(std::istream& in, std::uint64_t budget = kDefaultBudget);
LoadedSet load_difference_set(const std::filesystem::path& path,
                              std::uint64_t budget = kDefaultBudget);

std::string report_json(const VerificationReport& report, double wall_seconds, unsigned threads,
                        int indent = 2);
std::string case_a_json(const std::vector<CaseAParams>& rows, int indent = 2);
std::string case_b_json(const std::vector<CaseBParams>& rows, int indent = 2);

}  // namespace cyclotome
