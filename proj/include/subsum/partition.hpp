#pragma once

#include <string>
#include <vector>

#include "subsum/group_set.hpp"
#include "subsum/sequence.hpp"
#include "subsum/subgroup.hpp"

namespace subsum {

// A_1 . ... . A_n: nonempty subsets of one group. Part order is bookkeeping
// only; every predicate here is order-invariant.
class SetPartition {
public:
    // Throws InvalidMove on an empty part.
    SetPartition(GroupPtr group, std::vector<Mask> parts);
    SetPartition(GroupPtr group, const std::vector<GroupSet>& parts);

    const GroupPtr& group() const noexcept { return group_; }
    const Group& g() const noexcept { return *group_; }
    std::size_t size() const noexcept { return parts_.size(); }
    const std::vector<Mask>& masks() const noexcept { return parts_; }
    GroupSet part(std::size_t i) const;
    std::vector<GroupSet> parts() const;

    // Total number of terms, |S(A)|.
    std::size_t weight() const noexcept;

    // Parts sorted by (size, mask).
    SetPartition canonical() const;

    friend bool operator==(const SetPartition& a, const SetPartition& b) {
        return same_group(a.group_, b.group_) && a.parts_ == b.parts_;
    }

    // Set literals joined by a middle dot, in canonical order.
    std::string to_string() const;

private:
    GroupPtr group_;
    std::vector<Mask> parts_;
};

// S(A): v_g = number of parts containing g.
GSequence underlying_sequence(const SetPartition& p);

// Part sizes differ by at most one.
bool is_equitable(const SetPartition& p);
bool is_equitable_sizes(const std::vector<Mask>& parts);

// X + A_1 + ... + A_n, self-checked against X + Sigma_n(S(A)).
GroupSet parts_sumset(const SetPartition& p, const GroupSet& x);

// Moves g from parts[from] to parts[to]. Throws InvalidMove unless g is in
// parts[from], not in parts[to], and parts[from] keeps another element.
SetPartition move_element(const SetPartition& p, std::size_t from, std::size_t to, Element g);
// Exchanges gi in parts[i] with gj in parts[j].
SetPartition swap_elements(const SetPartition& p, std::size_t i, std::size_t j, Element gi, Element gj);

// Z = intersection of the A_i + H.
GroupSet coset_intersection_Z(const SetPartition& p, const Subgroup& h);

// Deals the terms of S, most frequent element first, round-robin into n
// parts. Throws HypothesisNotMet unless h(S) <= n <= |S|.
SetPartition greedy_partition(const GSequence& s, std::size_t n);

}  // namespace subsum
