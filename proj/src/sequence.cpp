#include "subsum/sequence.hpp"

#include <algorithm>
#include <numeric>

#include "subsum/error.hpp"
#include "subsum/set_algebra.hpp"

namespace subsum {

GSequence::GSequence(GroupPtr group) : group_(std::move(group)) {
    if (!group_) fail(ErrorKind::InvalidSpec, "sequence needs a group");
    counts_.assign(group_->order(), 0);
}

GSequence::GSequence(GroupPtr group, std::vector<std::uint32_t> counts)
    : group_(std::move(group)), counts_(std::move(counts)) {
    if (!group_) fail(ErrorKind::InvalidSpec, "sequence needs a group");
    if (counts_.size() != group_->order())
        fail(ErrorKind::GroupMismatch, "multiplicity vector does not match group " + group_->spec_string());
    length_ = std::accumulate(counts_.begin(), counts_.end(), std::size_t{0});
}

GSequence GSequence::of(GroupPtr group, std::initializer_list<std::uint32_t> terms) {
    std::vector<Element> es;
    for (auto t : terms) es.push_back(Element{t});
    return of(std::move(group), es);
}

GSequence GSequence::of(GroupPtr group, const std::vector<Element>& terms) {
    GSequence s(std::move(group));
    for (auto t : terms) {
        if (!s.group_->contains(t)) fail(ErrorKind::GroupMismatch, "term outside group " + s.group_->spec_string());
        ++s.counts_[t.index];
    }
    s.length_ = terms.size();
    return s;
}

std::uint32_t GSequence::max_multiplicity() const noexcept {
    return counts_.empty() ? 0 : *std::max_element(counts_.begin(), counts_.end());
}

GroupSet GSequence::support() const {
    Mask m;
    for (std::size_t i = 0; i < counts_.size(); ++i)
        if (counts_[i]) m.set(i);
    return GroupSet(group_, m);
}

Element GSequence::total_sum() const {
    std::uint32_t acc = 0;
    for (std::size_t i = 0; i < counts_.size(); ++i)
        for (std::uint32_t k = 0; k < counts_[i]; ++k) acc = group_->add_index(acc, static_cast<std::uint32_t>(i));
    return Element{acc};
}

std::vector<Element> GSequence::terms() const {
    std::vector<Element> out;
    out.reserve(length_);
    for (std::size_t i = 0; i < counts_.size(); ++i)
        for (std::uint32_t k = 0; k < counts_[i]; ++k) out.push_back(Element{static_cast<std::uint32_t>(i)});
    return out;
}

GSequence GSequence::with(Element a, std::uint32_t times) const {
    if (!group_->contains(a)) fail(ErrorKind::GroupMismatch, "term outside group " + group_->spec_string());
    GSequence out = *this;
    out.counts_[a.index] += times;
    out.length_ += times;
    return out;
}

GSequence GSequence::restrict(const GroupSet& x) const {
    require_same_group(group_, x.group());
    std::vector<std::uint32_t> c(counts_.size(), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        if (x.mask().test(i)) c[i] = counts_[i];
    return GSequence(group_, std::move(c));
}

bool GSequence::divides(const GSequence& other) const {
    require_same_group(group_, other.group_);
    for (std::size_t i = 0; i < counts_.size(); ++i)
        if (counts_[i] > other.counts_[i]) return false;
    return true;
}

GSequence GSequence::remove(const GSequence& t) const {
    if (!t.divides(*this)) fail(ErrorKind::NotSubsequence, t.to_string() + " does not divide " + to_string());
    std::vector<std::uint32_t> c(counts_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = counts_[i] - t.counts_[i];
    return GSequence(group_, std::move(c));
}

GSequence GSequence::translate(Element a) const {
    if (!group_->contains(a)) fail(ErrorKind::GroupMismatch, "element outside group " + group_->spec_string());
    std::vector<std::uint32_t> c(counts_.size(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[group_->add_index(static_cast<std::uint32_t>(i), a.index)] = counts_[i];
    return GSequence(group_, std::move(c));
}

std::string GSequence::to_string() const {
    if (empty()) return "[]";
    std::vector<Element> support_elems;
    for (std::size_t i = 0; i < counts_.size(); ++i)
        if (counts_[i]) support_elems.push_back(Element{static_cast<std::uint32_t>(i)});
    std::string s;
    bool first = true;
    for (auto e : sorted_by_residues(*group_, support_elems)) {
        if (!first) s += "·";
        first = false;
        s += group_->format_element(e);
        if (counts_[e.index] > 1) s += "^[" + std::to_string(counts_[e.index]) + "]";
    }
    return s;
}

Mask subsum_mask(const GSequence& s, std::size_t n) {
    if (n > s.length()) return Mask{};
    const Group& g = s.g();
    // reach[c]: sums of c-term subsequences of the types processed so far.
    std::vector<Mask> reach(n + 1);
    reach[0] = Mask::single(0);
    const auto& counts = s.counts();
    for (std::size_t t = 0; t < counts.size(); ++t) {
        const std::uint32_t v = counts[t];
        if (v == 0) continue;
        const Element e{static_cast<std::uint32_t>(t)};
        for (std::size_t c = n; c >= 1; --c) {
            Mask acc = reach[c];
            std::uint32_t shift = 0;
            for (std::size_t k = 1; k <= v && k <= c; ++k) {
                shift = g.add_index(shift, e.index);
                if (reach[c - k].any()) acc |= g.translate(reach[c - k], Element{shift});
            }
            reach[c] = acc;
        }
    }
    return reach[n];
}

GroupSet subsum_set(const GSequence& s, std::size_t n) {
    if (n > s.length())
        fail(ErrorKind::Range, "n = " + std::to_string(n) + " exceeds |S| = " + std::to_string(s.length()));
    return GroupSet(s.group(), subsum_mask(s, n));
}

GSequence max_bounded_subsequence(const GSequence& s, std::size_t n, const Subgroup& l) {
    require_same_group(s.group(), l.group());
    if (n < 1) fail(ErrorKind::Range, "max_bounded_subsequence needs n >= 1");
    const Group& g = s.g();
    std::vector<std::uint32_t> kept(g.order(), 0);
    std::vector<std::size_t> used(g.order(), 0);  // indexed by class representative
    for (std::uint32_t i = 0; i < g.order(); ++i) {
        if (s.counts()[i] == 0) continue;
        const auto rep = g.translate(l.mask(), Element{i}).first();
        const std::size_t room = n - used[rep];
        const auto take = static_cast<std::uint32_t>(std::min<std::size_t>(room, s.counts()[i]));
        kept[i] = take;
        used[rep] += take;
    }
    return GSequence(s.group(), std::move(kept));
}

bool subsum_kneser_bound_check(const GSequence& s, std::size_t n) {
    if (n < 1 || n > s.length()) fail(ErrorKind::Range, "subsum Kneser bound needs 1 <= n <= |S|");
    const GroupSet sigma = subsum_set(s, n);
    const Subgroup h = stabilizer(sigma);
    const GSequence sp = max_bounded_subsequence(s, n, h);
    const auto lhs = static_cast<std::int64_t>(sigma.size());
    const auto rhs = (static_cast<std::int64_t>(sp.length()) - static_cast<std::int64_t>(n) + 1) *
                     static_cast<std::int64_t>(h.order());
    return lhs >= rhs;
}

GSequence push(const QuotientMap& q, const GSequence& s) {
    require_same_group(s.group(), q.source());
    std::vector<std::uint32_t> c(q.image()->order(), 0);
    for (std::uint32_t i = 0; i < s.counts().size(); ++i) c[q(Element{i}).index] += s.counts()[i];
    return GSequence(q.image(), std::move(c));
}

}  // namespace subsum
