#pragma once

#include <span>
#include <vector>

#include "subsum/group_set.hpp"

namespace subsum {

class Subgroup {
public:
    static Subgroup trivial(const GroupPtr& group);
    static Subgroup whole(const GroupPtr& group);
    // Throws InvalidSubgroup unless the set contains 0 and is closed under
    // addition (closure under negation follows for finite sets).
    static Subgroup from_set(const GroupSet& members);
    static Subgroup generated_by(const GroupPtr& group, std::span<const Element> generators);

    const GroupPtr& group() const noexcept { return members_.group(); }
    const GroupSet& members() const noexcept { return members_; }
    const Mask& mask() const noexcept { return members_.mask(); }
    std::size_t order() const noexcept { return members_.size(); }
    bool is_trivial() const noexcept { return order() == 1; }
    bool is_whole() const noexcept { return order() == group()->order(); }
    bool contains(Element a) const noexcept { return members_.contains(a); }
    bool subgroup_of(const Subgroup& other) const { return members_.subset_of(other.members_); }
    const std::vector<Element>& generators() const noexcept { return generators_; }

    // y + H
    GroupSet coset(Element y) const { return members_.translate(y); }

    friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.members_ == b.members_; }

private:
    Subgroup(GroupSet members, std::vector<Element> generators)
        : members_(std::move(members)), generators_(std::move(generators)) {}

    GroupSet members_;
    std::vector<Element> generators_;
};

// Every subgroup exactly once, sorted by (size, member mask).
std::vector<Subgroup> enumerate_subgroups(const GroupPtr& group);

// Independent check used by tests and validators: 0 in A and A + A = A.
bool is_subgroup_set(const GroupSet& a);

// A + H, the union of the H-cosets meeting A.
GroupSet coset_hull(const GroupSet& a, const Subgroup& h);

// K/L has order 4 and exponent 2, i.e. K/L is the Klein four-group.
bool quotient_is_klein(const Subgroup& k, const Subgroup& l);

// The natural homomorphism G -> G/H. The image is realized as a product of
// cyclic groups (diagonalizing the relation lattice), so sets and sequences
// can be pushed forward and worked with like any other group.
class QuotientMap {
public:
    QuotientMap(GroupPtr source, Subgroup kernel);

    const GroupPtr& source() const noexcept { return source_; }
    const GroupPtr& image() const noexcept { return image_; }
    const Subgroup& kernel() const noexcept { return kernel_; }

    Element operator()(Element a) const;
    GroupSet push(const GroupSet& a) const;
    // Full preimage of a set in the image group.
    GroupSet preimage(const GroupSet& q) const;
    Subgroup preimage(const Subgroup& q) const;
    // Smallest-index element of the class.
    Element lift(Element q) const;

private:
    GroupPtr source_;
    Subgroup kernel_;
    GroupPtr image_;
    std::vector<std::uint32_t> image_of_;
    std::vector<std::uint32_t> lift_of_;
};

}  // namespace subsum
