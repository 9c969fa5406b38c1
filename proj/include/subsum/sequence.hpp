#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subsum/group_set.hpp"
#include "subsum/subgroup.hpp"

namespace subsum {

// An unordered multiset of group elements, stored as one multiplicity per
// element index.
class GSequence {
public:
    explicit GSequence(GroupPtr group);
    GSequence(GroupPtr group, std::vector<std::uint32_t> counts);

    static GSequence of(GroupPtr group, std::initializer_list<std::uint32_t> terms);
    static GSequence of(GroupPtr group, const std::vector<Element>& terms);

    const GroupPtr& group() const noexcept { return group_; }
    const Group& g() const noexcept { return *group_; }
    const std::vector<std::uint32_t>& counts() const noexcept { return counts_; }
    std::uint32_t count(Element a) const noexcept { return a.index < counts_.size() ? counts_[a.index] : 0; }

    std::size_t length() const noexcept { return length_; }
    bool empty() const noexcept { return length_ == 0; }
    // h(S); 0 for the empty sequence.
    std::uint32_t max_multiplicity() const noexcept;
    GroupSet support() const;
    Element total_sum() const;
    // Terms in increasing index order, repeated by multiplicity.
    std::vector<Element> terms() const;

    GSequence with(Element a, std::uint32_t times = 1) const;
    // S_X
    GSequence restrict(const GroupSet& x) const;
    // T^[-1] S; throws NotSubsequence unless T | S.
    GSequence remove(const GSequence& t) const;
    bool divides(const GSequence& other) const;
    GSequence translate(Element a) const;

    friend bool operator==(const GSequence& a, const GSequence& b) {
        return same_group(a.group_, b.group_) && a.counts_ == b.counts_;
    }

    // "(r)^[k]" terms joined by a middle dot in residue order; "[]" when empty.
    std::string to_string() const;

private:
    GroupPtr group_;
    std::vector<std::uint32_t> counts_;
    std::size_t length_ = 0;
};

// Sigma_n(S) by dynamic programming over term types. Throws Range unless
// 0 <= n <= |S|.
GroupSet subsum_set(const GSequence& s, std::size_t n);
// Mask form without the range check; empty when n > |S|.
Mask subsum_mask(const GSequence& s, std::size_t n);

// Longest S' | S with h(phi_L(S')) <= n. Each L-class keeps its n smallest
// terms by element index.
GSequence max_bounded_subsequence(const GSequence& s, std::size_t n, const Subgroup& l);

// |Sigma_n(S)| >= (|phi_H(S')| - n + 1)|H| with H = H(Sigma_n(S)) and S' the
// maximal H-bounded subsequence. Throws Range unless 1 <= n <= |S|.
bool subsum_kneser_bound_check(const GSequence& s, std::size_t n);

// Pushforward along the quotient map.
GSequence push(const QuotientMap& q, const GSequence& s);

}  // namespace subsum
