#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "subsum/engine.hpp"

namespace subsum::detail {

using Parts = std::vector<Mask>;
using Counts = std::vector<std::uint32_t>;
// Lexicographic objective, larger is better.
using Score = std::array<std::int64_t, 3>;

Mask parts_sum(const Group& g, const Mask& x, const Parts& parts);
Counts parts_counts(const Group& g, const Parts& parts);
Mask coset_z(const Group& g, const Parts& parts, const Mask& h);
std::size_t total(const Counts& c);
bool divides(const Counts& t, const Counts& s);
Counts minus(const Counts& s, const Counts& t);
// Support of the counts as a mask.
Mask support(const Counts& c);
Mask translate_neg(const Group& g, const Mask& m, std::uint32_t a);
bool is_subgroup_mask(const Group& g, const Mask& m);
bool periodic_or_empty(const Group& g, const Mask& a, const Mask& k);
std::size_t sum_of_squares(const Parts& parts);
// Sum over parts of max(0, |B_i \ Z| - 1).
std::size_t off_z_excess(const Parts& parts, const Mask& z);
// A subgroup of order 4 and exponent 2.
bool is_klein_mask(const Group& g, const Mask& k);
Parts sorted_parts(Parts parts);

// Every partition of every T | S with |T| = ell into n nonempty set parts,
// once each up to part order. f returns true to stop; the return value says
// whether it did.
bool enumerate_partitions(const Counts& s, std::size_t ell, std::size_t n,
                          const std::function<bool(const Parts&)>& f);
double search_size(const Counts& s, std::size_t ell, std::size_t n);

// Hard ceiling for fallback searches, which must stay exhaustive.
inline constexpr double kFallbackBudget = 2e8;

std::optional<Parts> search(const Counts& s, std::size_t ell, std::size_t n,
                            const std::function<bool(const Parts&)>& pred);

struct MoveKinds {
    bool move = true;
    bool swap = false;
    bool exchange = false;
};

using Feasible = std::function<bool(const Parts&, const Counts& spare)>;
using Objective = std::function<Score(const Parts&, const Counts& spare)>;

// First-improvement hill climb. Candidate moves are scanned by element index,
// then part index; a move is taken when it is feasible and strictly raises the
// objective. Exceeding cap moves raises InternalSoundness.
void climb(const Group& g, Parts& parts, Counts& spare, MoveKinds kinds, const Feasible& feasible,
           const Objective& objective, std::size_t cap);

std::size_t move_cap(const Group& g, std::size_t s_len, std::size_t n);

// Assigns actual terms of s to quotient parts: each class hands out its
// lowest-index unused terms, part by part.
Parts lift_parts(const QuotientMap& q, const GSequence& s, const Parts& quotient_parts);

struct ReducedMax {
    Parts parts;
    std::size_t size = 0;
    bool heuristic = false;
};

// Maximum of |X + sum B_i| over partitions of some T | S with |T| = |S'|.
ReducedMax maximal_reduced(const Group& g, const Mask& x, const Counts& s, const Counts& sprime, std::size_t n,
                           SearchMode mode);
SearchMode pick_mode(const Counts& s, std::size_t ell, std::size_t n, double threshold);

// Reduced (L trivial) theorem instance.
struct Reduced {
    GroupPtr group;
    Mask x;
    Counts s;
    Counts sprime;
    std::size_t n = 0;

    const Group& g() const { return *group; }
    std::size_t ell() const { return total(sprime); }
    std::size_t target() const { return ell() - n + x.count(); }
};

// Lemma cores on raw masks. Each throws HypothesisNotMet when its hypotheses
// fail or no witness exists.
Parts seed_core(const Group& g, const Mask& x, const Counts& s, const Parts& p);
Parts equalize_z_core(const Group& g, const Mask& x, const Parts& p);

struct Exceptional {
    Parts parts;
    Mask k;
    std::uint32_t beta = 0;
};
// Equitable repartition of exactly S(p), or the two-part exception.
std::variant<Parts, Exceptional> equalize_core(const Group& g, const Mask& x, const Parts& p);

struct Outcome {
    int item = 0;
    Parts parts;
    Mask h;
    Mask k;
    std::optional<std::uint32_t> beta;
    std::optional<std::uint32_t> alpha;
    std::size_t max_sumset = 0;
    bool heuristic = false;
    bool pipeline = true;
};

Mask subsum_counts(const Group& g, const Counts& s, std::size_t n);

Outcome main_reduced(const Reduced& r, const EngineOptions& opts);
Outcome large_n_reduced(const Reduced& r, const EngineOptions& opts);

}  // namespace subsum::detail
