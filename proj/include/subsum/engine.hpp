#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "subsum/error.hpp"
#include "subsum/partition.hpp"
#include "subsum/sequence.hpp"
#include "subsum/subgroup.hpp"

namespace subsum {

enum class SearchMode { Exhaustive, LocalSearch };

struct EngineOptions {
    // Partition searches whose raw assignment count stays below this bound are
    // exhaustive; larger ones fall back to local search.
    double exhaustive_threshold = 1e6;
};

enum class TheoremTag { Main, LargeN, Special };
const char* to_string(TheoremTag t) noexcept;

struct Check {
    std::string clause;
    bool pass = false;
};

struct TheoremCertificate {
    TheoremTag theorem = TheoremTag::Main;
    int item = 0;
    std::optional<SetPartition> partition;
    std::optional<Subgroup> H;
    std::optional<Subgroup> K;
    std::optional<Subgroup> L;
    std::optional<Element> alpha;
    std::optional<Element> beta;
    std::optional<Element> x;
    std::optional<Element> d;
    std::optional<GroupSet> Z;
    std::optional<std::size_t> m;
    std::optional<std::size_t> j;          // redundant part (0-based)
    std::vector<std::size_t> index_set;    // I_K (0-based)
    std::vector<Check> checks;
    // Largest |X + sum A_i| found by maximal_partition (main theorem only).
    std::optional<std::size_t> max_sumset;
    bool heuristic = false;
    // "pipeline" when the lemma passes produced the witness, "search" when the
    // exhaustive fallback did.
    std::string route;

    bool all_pass() const;
};

// Everything a certificate is checked against. Special-structure instances
// use only S and n.
struct TheoremInput {
    GroupSet X;
    Subgroup L;
    GSequence S;
    GSequence Sprime;
    std::size_t n = 1;

    GroupPtr group() const { return S.group(); }
    static TheoremInput special(const GSequence& s, std::size_t n);
};

// Raised when a constructed certificate fails independent validation.
class SoundnessError : public Error {
public:
    SoundnessError(const std::string& what, TheoremCertificate cert)
        : Error(ErrorKind::InternalSoundness, what), cert_(std::move(cert)) {}
    const TheoremCertificate& certificate() const noexcept { return cert_; }

private:
    TheoremCertificate cert_;
};

struct MaximalPartition {
    SetPartition partition;
    std::size_t sumset_size = 0;
    bool heuristic = false;
};

// A partition with S(A) | S and |S(A)| = |S'| (parts L-distinct) maximizing
// |X + sum A_i|; local search mode only guarantees a local maximum.
MaximalPartition maximal_partition(const GroupSet& x, const Subgroup& l, const GSequence& s, const GSequence& sprime,
                                   std::size_t n, SearchMode mode);
// Picks the mode from the raw assignment count.
MaximalPartition maximal_partition(const GroupSet& x, const Subgroup& l, const GSequence& s, const GSequence& sprime,
                                   std::size_t n, const EngineOptions& opts);

// Raw assignments an exhaustive search over T | S, |T| = ell, n parts walks.
double partition_search_size(const GSequence& s, std::size_t ell, std::size_t n);

// Leftover terms pushed into Z and terms off Z made unique in their H-coset
// within each part, keeping X + sum B_i fixed.
SetPartition normalize_seed(const GroupSet& x, const GSequence& s, const SetPartition& p);

// Rebalances so every part has at most one element off Z, keeping S(A) and
// X + sum A_i fixed.
SetPartition normalize_equalize_Z(const GroupSet& x, const SetPartition& p);

// X + Sigma_n(S) = X + sum A_i under the lemma's hypotheses (checked).
bool subsums_equal_sumset_check(const GroupSet& x, const GSequence& s, const SetPartition& p, const Subgroup& h,
                                const GroupSet& z);
// X + Sigma_ell(S) = X + sum A_i + (ell - n) g with H = H(X + sum A_i) and
// Z = g + H (hypotheses checked).
bool frozen_shift_check(const GroupSet& x, const GSequence& s, const SetPartition& p, Element g, std::size_t ell);

struct ExceptionalStructure {
    SetPartition partition;
    Subgroup K;
    Element beta;
    GroupSet W;  // A_1 n A_2
};

// Equitable repartition of S = S(A) keeping the sumset threshold, or the
// two-part Klein exception.
std::variant<SetPartition, ExceptionalStructure> equalize_sizes(const GroupSet& x, const GSequence& s,
                                                                const SetPartition& p);

// Theorem entry points. Every returned certificate has passed
// validate_certificate; a failure raises SoundnessError.
TheoremCertificate main_partition_certificate(const TheoremInput& in, const EngineOptions& opts = {});
TheoremCertificate large_n_certificate(const TheoremInput& in, const EngineOptions& opts = {});
TheoremCertificate special_structure_certificate(const GSequence& s, std::size_t n, const EngineOptions& opts = {});

// Recomputes every clause of the certified item from primitives.
std::vector<Check> validate_certificate(const TheoremCertificate& cert, const TheoremInput& in);

// Hypothesis checks shared with the harness.
void require_main_hypotheses(const TheoremInput& in);
// m = min{n, |S|-n, |S|-h(S)}; requires |S| > n >= 1.
std::size_t special_m(const GSequence& s, std::size_t n);
bool special_hypothesis_holds(const GSequence& s, std::size_t n);

}  // namespace subsum
