#include "subsum/partition.hpp"

#include <algorithm>

#include "subsum/error.hpp"
#include "subsum/set_algebra.hpp"

namespace subsum {

SetPartition::SetPartition(GroupPtr group, std::vector<Mask> parts)
    : group_(std::move(group)), parts_(std::move(parts)) {
    if (!group_) fail(ErrorKind::InvalidSpec, "partition needs a group");
    const Mask full = group_->full_mask();
    for (const auto& m : parts_) {
        if (m.none()) fail(ErrorKind::InvalidMove, "partition parts must be nonempty");
        if (!m.subset_of(full)) fail(ErrorKind::GroupMismatch, "part exceeds group " + group_->spec_string());
    }
}

namespace {
std::vector<Mask> masks_of(const GroupPtr& group, const std::vector<GroupSet>& parts) {
    std::vector<Mask> out;
    for (const auto& p : parts) {
        require_same_group(group, p.group());
        out.push_back(p.mask());
    }
    return out;
}
}  // namespace

SetPartition::SetPartition(GroupPtr group, const std::vector<GroupSet>& parts)
    : SetPartition(group, masks_of(group, parts)) {}

GroupSet SetPartition::part(std::size_t i) const {
    if (i >= parts_.size()) fail(ErrorKind::Range, "part index out of range");
    return GroupSet(group_, parts_[i]);
}

std::vector<GroupSet> SetPartition::parts() const {
    std::vector<GroupSet> out;
    for (const auto& m : parts_) out.emplace_back(group_, m);
    return out;
}

std::size_t SetPartition::weight() const noexcept {
    std::size_t w = 0;
    for (const auto& m : parts_) w += m.count();
    return w;
}

SetPartition SetPartition::canonical() const {
    auto parts = parts_;
    std::sort(parts.begin(), parts.end(), [](const Mask& a, const Mask& b) {
        const auto ca = a.count(), cb = b.count();
        if (ca != cb) return ca < cb;
        return a < b;
    });
    return SetPartition(group_, std::move(parts));
}

std::string SetPartition::to_string() const {
    const SetPartition c = canonical();
    std::string s;
    for (std::size_t i = 0; i < c.parts_.size(); ++i) {
        if (i) s += "·";
        s += GroupSet(group_, c.parts_[i]).to_string();
    }
    return s.empty() ? "[]" : s;
}

GSequence underlying_sequence(const SetPartition& p) {
    std::vector<std::uint32_t> counts(p.g().order(), 0);
    for (const auto& m : p.masks()) m.for_each([&](std::size_t i) { ++counts[i]; });
    return GSequence(p.group(), std::move(counts));
}

bool is_equitable_sizes(const std::vector<Mask>& parts) {
    if (parts.empty()) return true;
    std::size_t lo = parts[0].count(), hi = lo;
    for (const auto& m : parts) {
        lo = std::min(lo, m.count());
        hi = std::max(hi, m.count());
    }
    return hi - lo <= 1;
}

bool is_equitable(const SetPartition& p) { return is_equitable_sizes(p.masks()); }

GroupSet parts_sumset(const SetPartition& p, const GroupSet& x) {
    require_same_group(p.group(), x.group());
    if (x.empty()) fail(ErrorKind::EmptyOperand, "X must be nonempty");
    Mask acc = x.mask();
    for (const auto& m : p.masks()) acc = p.g().sumset(acc, m);
    const Mask bound = p.g().sumset(x.mask(), subsum_mask(underlying_sequence(p), p.size()));
    if (!acc.subset_of(bound)) fail(ErrorKind::InternalSoundness, "part sumset escapes X + Sigma_n(S(A))");
    return GroupSet(p.group(), acc);
}

SetPartition move_element(const SetPartition& p, std::size_t from, std::size_t to, Element g) {
    if (from >= p.size() || to >= p.size() || from == to) fail(ErrorKind::InvalidMove, "bad part indices");
    if (!p.g().contains(g)) fail(ErrorKind::GroupMismatch, "element outside group " + p.g().spec_string());
    auto parts = p.masks();
    if (!parts[from].test(g.index)) fail(ErrorKind::InvalidMove, "element not in the source part");
    if (parts[to].test(g.index)) fail(ErrorKind::InvalidMove, "element already in the target part");
    if (parts[from].count() < 2) fail(ErrorKind::InvalidMove, "move would empty the source part");
    parts[from].reset(g.index);
    parts[to].set(g.index);
    return SetPartition(p.group(), std::move(parts));
}

SetPartition swap_elements(const SetPartition& p, std::size_t i, std::size_t j, Element gi, Element gj) {
    if (i >= p.size() || j >= p.size() || i == j) fail(ErrorKind::InvalidMove, "bad part indices");
    if (!p.g().contains(gi) || !p.g().contains(gj))
        fail(ErrorKind::GroupMismatch, "element outside group " + p.g().spec_string());
    auto parts = p.masks();
    if (!parts[i].test(gi.index) || !parts[j].test(gj.index))
        fail(ErrorKind::InvalidMove, "swapped elements must lie in their parts");
    if (gi == gj) return p;
    if (parts[j].test(gi.index) || parts[i].test(gj.index))
        fail(ErrorKind::InvalidMove, "swap would duplicate an element within a part");
    parts[i].reset(gi.index);
    parts[i].set(gj.index);
    parts[j].reset(gj.index);
    parts[j].set(gi.index);
    return SetPartition(p.group(), std::move(parts));
}

GroupSet coset_intersection_Z(const SetPartition& p, const Subgroup& h) {
    require_same_group(p.group(), h.group());
    Mask z = p.g().full_mask();
    for (const auto& m : p.masks()) z &= p.g().sumset(m, h.mask());
    return GroupSet(p.group(), z);
}

SetPartition greedy_partition(const GSequence& s, std::size_t n) {
    if (n < 1 || n > s.length() || s.max_multiplicity() > n)
        fail(ErrorKind::HypothesisNotMet, "partition needs h(S) <= n <= |S|");
    std::vector<std::uint32_t> order;
    for (std::uint32_t i = 0; i < s.counts().size(); ++i)
        if (s.counts()[i]) order.push_back(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return s.counts()[a] > s.counts()[b]; });
    std::vector<Mask> parts(n);
    std::size_t cursor = 0;
    // Consecutive deals of one element land in distinct parts because its
    // multiplicity is at most n.
    for (auto e : order)
        for (std::uint32_t k = 0; k < s.counts()[e]; ++k) parts[cursor++ % n].set(e);
    return SetPartition(s.group(), std::move(parts));
}

}  // namespace subsum
