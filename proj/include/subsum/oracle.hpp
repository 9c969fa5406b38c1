#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "subsum/partition.hpp"
#include "subsum/sequence.hpp"

namespace subsum {

// Default ceiling on raw assignments an oracle call may scan.
inline constexpr double kOracleCapacity = 5e7;

// Lazily yields every partition of a multiset into n nonempty parts (each part
// a set) exactly once. Each element type of multiplicity k picks a k-subset of
// the parts; assignments whose part masks are not nondecreasing are skipped,
// which leaves one representative per unordered partition.
class PartitionEnumerator {
public:
    // Throws HypothesisNotMet unless h(S') <= n <= |S'| and n >= 1.
    PartitionEnumerator(GSequence sprime, std::size_t n);

    std::optional<SetPartition> next();

    // Number of raw assignments the enumerator walks: the product of C(n, k).
    double raw_count() const noexcept { return raw_count_; }

private:
    bool advance();
    bool emit_current(std::vector<Mask>& parts) const;

    GSequence sprime_;
    std::size_t n_;
    std::vector<std::uint32_t> types_;
    std::vector<std::vector<std::uint64_t>> choices_;  // per type: part-index bitsets
    std::vector<std::size_t> cursor_;
    bool started_ = false;
    bool done_ = false;
    double raw_count_ = 1;
};

std::vector<SetPartition> all_setpartitions(const GSequence& sprime, std::size_t n);

// Global maximum of |X + sum A_i| over partitions of S' with a witness (the
// first maximum in enumeration order). Throws Capacity past the budget.
std::pair<std::size_t, SetPartition> oracle_max_sumset(const GroupSet& x, const GSequence& sprime, std::size_t n,
                                                        double capacity = kOracleCapacity);

// The same maximum, but over every T | S with |T| = ell (and h(T) <= n).
// Optionally restricted to equitable partitions; nullopt when no partition
// qualifies.
std::optional<std::pair<std::size_t, SetPartition>> oracle_max_sumset_over(const GroupSet& x, const GSequence& s,
                                                                           std::size_t ell, std::size_t n,
                                                                           bool equitable_only = false,
                                                                           double capacity = kOracleCapacity);

// Sigma_n(S) by listing every n-term sub-multiset.
GroupSet oracle_subsums(const GSequence& s, std::size_t n);

// Visits every T | S with |T| = ell.
void for_each_subsequence(const GSequence& s, std::size_t ell, const std::function<void(const GSequence&)>& f);

}  // namespace subsum
