#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "subsum/mask.hpp"

namespace subsum {

// An element of a finite abelian group, stored as its mixed-radix index
// (first cyclic factor varies fastest). Arithmetic lives on Group.
struct Element {
    std::uint32_t index = 0;

    friend constexpr auto operator<=>(Element, Element) = default;
};

class Group;
using GroupPtr = std::shared_ptr<const Group>;

// Largest supported |G|: 64 unless SUBSUM_CAPACITY overrides it (clamped to
// Mask::kMaxElements).
std::size_t group_capacity();

// Throws ErrorKind::InvalidSpec for an empty list or a zero factor and
// ErrorKind::Capacity when the product exceeds the capacity.
GroupPtr make_group(std::vector<std::uint32_t> orders);
GroupPtr make_group(std::vector<std::uint32_t> orders, std::size_t capacity);

// Z/d_1 x ... x Z/d_k with precomputed addition and negation tables.
class Group {
public:
    struct SubgroupRecord {
        Mask members;
        std::vector<Element> generators;
    };

    Group(std::vector<std::uint32_t> orders, std::size_t capacity);

    const std::vector<std::uint32_t>& orders() const noexcept { return orders_; }
    std::size_t order() const noexcept { return order_; }
    std::size_t rank() const noexcept { return orders_.size(); }

    Element identity() const noexcept { return Element{0}; }
    bool contains(Element a) const noexcept { return a.index < order_; }

    Element add(Element a, Element b) const;
    Element neg(Element a) const;
    Element sub(Element a, Element b) const;
    // a added to itself m times; m may be negative.
    Element scalar_mul(std::int64_t m, Element a) const;
    std::uint64_t element_order(Element a) const;

    std::vector<std::uint32_t> residues(Element a) const;
    // Residues are reduced modulo the factor orders.
    Element from_residues(std::span<const std::int64_t> residues) const;

    // Unchecked table lookups for hot loops.
    std::uint32_t add_index(std::uint32_t a, std::uint32_t b) const noexcept {
        return add_table_[static_cast<std::size_t>(a) * order_ + b];
    }
    std::uint32_t neg_index(std::uint32_t a) const noexcept { return neg_table_[a]; }

    Mask full_mask() const noexcept { return Mask::prefix(order_); }
    Mask translate(const Mask& m, Element g) const;
    Mask negate(const Mask& m) const;
    Mask sumset(const Mask& a, const Mask& b) const;

    // Every subgroup, sorted by (size, mask), with a minimal generating list
    // recorded at discovery time. Computed once on first use.
    const std::vector<SubgroupRecord>& subgroup_records() const;

    bool same_as(const Group& other) const noexcept { return orders_ == other.orders_; }

    std::string spec_string() const;                 // "2,4"
    std::string format_element(Element a) const;     // "(1,3)"

private:
    std::vector<std::uint32_t> orders_;
    std::size_t order_ = 1;
    std::vector<std::uint32_t> add_table_;
    std::vector<std::uint32_t> neg_table_;

    mutable std::once_flag subgroups_once_;
    mutable std::vector<SubgroupRecord> subgroups_;
};

bool same_group(const GroupPtr& a, const GroupPtr& b) noexcept;
void require_same_group(const GroupPtr& a, const GroupPtr& b);

}  // namespace subsum
