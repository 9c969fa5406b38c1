#include "subsum/group_set.hpp"

#include <algorithm>

#include "subsum/error.hpp"

namespace subsum {

GroupSet::GroupSet(GroupPtr group) : group_(std::move(group)) {
    if (!group_) fail(ErrorKind::InvalidSpec, "set needs a group");
}

GroupSet::GroupSet(GroupPtr group, Mask mask) : group_(std::move(group)), mask_(mask) {
    if (!group_) fail(ErrorKind::InvalidSpec, "set needs a group");
    if (!mask_.subset_of(group_->full_mask()))
        fail(ErrorKind::GroupMismatch, "set mask exceeds group " + group_->spec_string());
}

GroupSet GroupSet::of(GroupPtr group, std::span<const Element> elements) {
    Mask m;
    for (auto e : elements) {
        if (!group->contains(e)) fail(ErrorKind::GroupMismatch, "element outside group " + group->spec_string());
        m.set(e.index);
    }
    return GroupSet(std::move(group), m);
}

GroupSet GroupSet::of(GroupPtr group, std::initializer_list<std::uint32_t> indices) {
    std::vector<Element> es;
    for (auto i : indices) es.push_back(Element{i});
    return of(std::move(group), es);
}

GroupSet GroupSet::full(GroupPtr group) {
    const Mask m = group->full_mask();
    return GroupSet(std::move(group), m);
}

GroupSet GroupSet::singleton(GroupPtr group, Element g) {
    if (!group->contains(g)) fail(ErrorKind::GroupMismatch, "element outside group " + group->spec_string());
    return GroupSet(std::move(group), Mask::single(g.index));
}

Element GroupSet::min_element() const {
    if (empty()) fail(ErrorKind::EmptyOperand, "empty set has no minimum");
    return Element{static_cast<std::uint32_t>(mask_.first())};
}

std::vector<Element> GroupSet::elements() const {
    std::vector<Element> out;
    out.reserve(size());
    mask_.for_each([&](std::size_t i) { out.push_back(Element{static_cast<std::uint32_t>(i)}); });
    return out;
}

GroupSet GroupSet::with(Element a) const {
    if (!group_->contains(a)) fail(ErrorKind::GroupMismatch, "element outside group " + group_->spec_string());
    GroupSet out = *this;
    out.mask_.set(a.index);
    return out;
}

GroupSet GroupSet::without(Element a) const {
    GroupSet out = *this;
    if (group_->contains(a)) out.mask_.reset(a.index);
    return out;
}

GroupSet GroupSet::translate(Element a) const {
    if (!group_->contains(a)) fail(ErrorKind::GroupMismatch, "element outside group " + group_->spec_string());
    return GroupSet(group_, group_->translate(mask_, a));
}

GroupSet GroupSet::negated() const { return GroupSet(group_, group_->negate(mask_)); }

GroupSet GroupSet::complement() const { return GroupSet(group_, group_->full_mask() - mask_); }

bool GroupSet::subset_of(const GroupSet& other) const {
    require_same_group(group_, other.group_);
    return mask_.subset_of(other.mask_);
}

bool GroupSet::intersects(const GroupSet& other) const {
    require_same_group(group_, other.group_);
    return mask_.intersects(other.mask_);
}

GroupSet& GroupSet::operator|=(const GroupSet& o) {
    require_same_group(group_, o.group_);
    mask_ |= o.mask_;
    return *this;
}

GroupSet& GroupSet::operator&=(const GroupSet& o) {
    require_same_group(group_, o.group_);
    mask_ &= o.mask_;
    return *this;
}

GroupSet& GroupSet::operator-=(const GroupSet& o) {
    require_same_group(group_, o.group_);
    mask_ -= o.mask_;
    return *this;
}

std::vector<Element> sorted_by_residues(const Group& group, std::vector<Element> elements) {
    std::sort(elements.begin(), elements.end(), [&](Element a, Element b) {
        return group.residues(a) < group.residues(b);
    });
    return elements;
}

std::string GroupSet::to_string() const {
    std::string s = "{";
    bool first = true;
    for (auto e : sorted_by_residues(*group_, elements())) {
        if (!first) s += ',';
        first = false;
        s += group_->format_element(e);
    }
    s += '}';
    return s;
}

bool canonical_less(const GroupSet& a, const GroupSet& b) {
    const auto ca = a.size(), cb = b.size();
    if (ca != cb) return ca < cb;
    return a.mask() < b.mask();
}

}  // namespace subsum
