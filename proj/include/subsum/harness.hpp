#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "subsum/engine.hpp"

namespace subsum {

inline constexpr const char* kLibraryVersion = "1.0.0";

// Every multiset of the given length over G, in generation order (the
// multiplicity vector decreases lexicographically). With canonicalize, only
// the translate whose multiplicity vector is lexicographically largest.
void enumerate_sequences(const GroupPtr& g, std::size_t length, bool canonicalize,
                         const std::function<void(const GSequence&)>& f);
std::vector<GSequence> enumerate_sequences(const GroupPtr& g, std::size_t length, bool canonicalize);

// The translate of s with the lexicographically largest multiplicity vector.
GSequence canonical_translate(const GSequence& s);

enum class XPolicy { Identity, Sample };
enum class LPolicy { Trivial, All };

struct CampaignConfig {
    std::vector<std::vector<std::uint32_t>> groups;
    std::size_t max_len = 4;
    // Inclusive n range; nullopt means every n.
    std::optional<std::pair<std::size_t, std::size_t>> n_range;
    XPolicy x_policy = XPolicy::Identity;
    std::size_t x_samples = 0;
    std::uint64_t x_seed = 0;
    LPolicy l_policy = LPolicy::Trivial;
    std::vector<TheoremTag> theorems{TheoremTag::Main};
    bool canonicalize = false;
    std::size_t jobs = 1;
    std::string out;  // empty or "-" for stdout
    double exhaustive_threshold = 1e6;
    // Compare maximal_partition against the brute-force maximum when exact.
    bool oracle = true;
};

struct CampaignSummary {
    std::size_t instances = 0;
    std::size_t certified = 0;
    std::map<std::string, std::size_t> items;  // "main:1" -> count
    std::size_t validation_failures = 0;
    std::size_t oracle_mismatches = 0;
    std::size_t gaps = 0;
    std::size_t heuristic = 0;

    bool ok() const { return validation_failures == 0 && oracle_mismatches == 0 && gaps == 0; }
};

// Canonical JSON of the config minus jobs and out, and its FNV-1a hash.
std::string config_json(const CampaignConfig& config);
std::string config_hash(const CampaignConfig& config);

// Runs every instance and writes the report (header, one record per instance
// in generation order, summary). Throws InvalidSpec on a bad config and Io
// when the sink fails.
CampaignSummary run_campaign(const CampaignConfig& config);
CampaignSummary run_campaign(const CampaignConfig& config, std::ostream& sink);

// One line-delimited record. Throws Io on a failed write.
void emit_report(const std::string& record, std::ostream& sink);

// Certificate as a JSON object string (no trailing newline).
std::string certificate_json(const TheoremCertificate& cert);
// Human-readable multi-line rendering.
std::string certificate_text(const TheoremCertificate& cert);

}  // namespace subsum
