#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "subsum/group.hpp"
#include "subsum/mask.hpp"

namespace subsum {

// A subset of a finite group, stored as a membership bitmask.
class GroupSet {
public:
    explicit GroupSet(GroupPtr group);
    GroupSet(GroupPtr group, Mask mask);

    static GroupSet of(GroupPtr group, std::span<const Element> elements);
    static GroupSet of(GroupPtr group, std::initializer_list<std::uint32_t> indices);
    static GroupSet full(GroupPtr group);
    static GroupSet singleton(GroupPtr group, Element g);

    const GroupPtr& group() const noexcept { return group_; }
    const Group& g() const noexcept { return *group_; }
    const Mask& mask() const noexcept { return mask_; }

    std::size_t size() const noexcept { return mask_.count(); }
    bool empty() const noexcept { return mask_.none(); }
    bool contains(Element a) const noexcept { return a.index < group_->order() && mask_.test(a.index); }
    // Lowest-index member; throws EmptyOperand on the empty set.
    Element min_element() const;
    std::vector<Element> elements() const;

    GroupSet with(Element a) const;
    GroupSet without(Element a) const;
    GroupSet translate(Element a) const;
    GroupSet negated() const;
    GroupSet complement() const;

    bool subset_of(const GroupSet& other) const;
    bool intersects(const GroupSet& other) const;

    GroupSet& operator|=(const GroupSet& o);
    GroupSet& operator&=(const GroupSet& o);
    GroupSet& operator-=(const GroupSet& o);
    friend GroupSet operator|(GroupSet a, const GroupSet& b) { return a |= b; }
    friend GroupSet operator&(GroupSet a, const GroupSet& b) { return a &= b; }
    friend GroupSet operator-(GroupSet a, const GroupSet& b) { return a -= b; }

    friend bool operator==(const GroupSet& a, const GroupSet& b) {
        return same_group(a.group_, b.group_) && a.mask_ == b.mask_;
    }

    // Sorted residue-tuple literal, e.g. "{(0,0),(1,1)}".
    std::string to_string() const;

private:
    GroupPtr group_;
    Mask mask_;
};

// Canonical order on sets of one group: by size, then by mask.
bool canonical_less(const GroupSet& a, const GroupSet& b);

// Elements of a set ordered lexicographically by residue tuple.
std::vector<Element> sorted_by_residues(const Group& group, std::vector<Element> elements);

}  // namespace subsum
