#pragma once

#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qflocal/regular.hpp"

namespace qf {

using Json = nlohmann::ordered_json;

struct CorpusEntry {
    std::string name;
    GramLattice lattice;
    int line = 0;
};

// JSON Lines: {"name": ..., "gram": [[...],...]} or {"name": ..., "diag": [...]}.
std::vector<CorpusEntry> parse_corpus(std::istream& in);
std::vector<CorpusEntry> load_corpus_file(const std::string& path);

// Inline literals accepted anywhere a corpus path is: "diag:1,1,1,8" or
// "gram:[[2,1],[1,2]]".
bool looks_inline(const std::string& input);
GramLattice parse_inline_lattice(const std::string& input);

Json corpus_entry_json(const CorpusEntry& e);

// Built-in reference corpus: the concrete families plus deterministic
// seeded rank-4/5 entries (>= 50 of rank >= 4).
std::vector<CorpusEntry> reference_corpus();

// --- report serialization -------------------------------------------------

Json profile_json(const LocalProfile& pr);
Json jordan_json(const JordanSplitting& J);
Json report_json(const ScanReport& rep);

// Full per-lattice analysis: profiles, splittings, type A, escalation data.
Json analyze_json(const GramLattice& L, const std::vector<Int>& primes, int vcap);

// Schema check used by the round-trip tests and the CLI self-checks.
bool validate_report_json(const Json& j, std::string* why = nullptr);

std::string render_report_text(const Json& j);

}  // namespace qf
