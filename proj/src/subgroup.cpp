#include "subsum/subgroup.hpp"

#include <algorithm>
#include <cstdlib>

#include "subsum/error.hpp"

namespace subsum {

namespace {

Mask close_under(const Group& g, Mask members, std::span<const Element> gens) {
    // Grow until closed: repeatedly add translates by the generators.
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto x : gens) {
            const Mask next = members | g.translate(members, x);
            if (next != members) {
                members = next;
                changed = true;
            }
        }
    }
    return members;
}

std::vector<Element> greedy_generators(const GroupSet& members) {
    const Group& g = members.g();
    std::vector<Element> gens;
    Mask span = Mask::single(0);
    while (span != members.mask()) {
        Element best{0};
        std::size_t best_size = 0;
        (members.mask() - span).for_each([&](std::size_t i) {
            const Element e{static_cast<std::uint32_t>(i)};
            const Element one[] = {e};
            const auto size = close_under(g, span, one).count();
            if (size > best_size) {
                best_size = size;
                best = e;
            }
        });
        gens.push_back(best);
        const Element one[] = {best};
        span = close_under(g, span, one);
    }
    return gens;
}

}  // namespace

Subgroup Subgroup::trivial(const GroupPtr& group) { return Subgroup(GroupSet::of(group, {0}), {}); }

Subgroup Subgroup::whole(const GroupPtr& group) {
    GroupSet all = GroupSet::full(group);
    auto gens = greedy_generators(all);
    return Subgroup(std::move(all), std::move(gens));
}

bool is_subgroup_set(const GroupSet& a) {
    if (!a.contains(a.g().identity())) return false;
    return a.g().sumset(a.mask(), a.mask()) == a.mask();
}

Subgroup Subgroup::from_set(const GroupSet& members) {
    if (!is_subgroup_set(members))
        fail(ErrorKind::InvalidSubgroup, members.to_string() + " is not a subgroup of " + members.g().spec_string());
    // The cached lattice gives minimal generating lists; past the default
    // capacity it is too large to build just for reporting.
    if (members.g().order() <= 64) {
        const auto& recs = members.g().subgroup_records();
        const auto key = std::make_pair(members.size(), members.mask());
        auto it = std::lower_bound(recs.begin(), recs.end(), key, [](const Group::SubgroupRecord& r, const auto& k) {
            return std::make_pair(r.members.count(), r.members) < k;
        });
        if (it != recs.end() && it->members == members.mask()) return Subgroup(members, it->generators);
    }
    return Subgroup(members, greedy_generators(members));
}

Subgroup Subgroup::generated_by(const GroupPtr& group, std::span<const Element> generators) {
    for (auto e : generators)
        if (!group->contains(e)) fail(ErrorKind::GroupMismatch, "generator outside group " + group->spec_string());
    const Mask members = close_under(*group, Mask::single(0), generators);
    return from_set(GroupSet(group, members));
}

std::vector<Subgroup> enumerate_subgroups(const GroupPtr& group) {
    std::vector<Subgroup> out;
    for (const auto& rec : group->subgroup_records())
        out.push_back(Subgroup::from_set(GroupSet(group, rec.members)));
    return out;
}

GroupSet coset_hull(const GroupSet& a, const Subgroup& h) {
    require_same_group(a.group(), h.group());
    return GroupSet(a.group(), a.g().sumset(a.mask(), h.mask()));
}

bool quotient_is_klein(const Subgroup& k, const Subgroup& l) {
    if (!l.subgroup_of(k)) return false;
    if (k.order() != 4 * l.order()) return false;
    const Group& g = *k.group();
    for (auto x : k.members().elements())
        if (!l.contains(g.add(x, x))) return false;
    return true;
}

QuotientMap::QuotientMap(GroupPtr source, Subgroup kernel)
    : source_(std::move(source)), kernel_(std::move(kernel)) {
    if (!same_group(source_, kernel_.group()))
        fail(ErrorKind::InvalidSubgroup, "kernel is not a subgroup of " + source_->spec_string());
    const Group& g = *source_;
    const std::size_t k = g.rank();

    // Relation lattice: rows d_i e_i plus one row per kernel generator.
    std::vector<std::vector<std::int64_t>> rel;
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::int64_t> row(k, 0);
        row[i] = g.orders()[i];
        rel.push_back(row);
    }
    for (auto h : kernel_.generators()) {
        auto r = g.residues(h);
        rel.emplace_back(r.begin(), r.end());
    }

    // Diagonalize with unimodular row and column operations, tracking the
    // column operations in basis; x -> x * basis then maps G onto
    // the product of Z/|d_t|.
    std::vector<std::vector<std::int64_t>> basis(k, std::vector<std::int64_t>(k, 0));
    for (std::size_t i = 0; i < k; ++i) basis[i][i] = 1;
    const std::size_t rows = rel.size();

    auto swap_cols = [&](std::size_t a, std::size_t b) {
        for (auto& row : rel) std::swap(row[a], row[b]);
        for (auto& row : basis) std::swap(row[a], row[b]);
    };
    auto col_sub = [&](std::size_t dst, std::size_t src, std::int64_t q) {
        for (auto& row : rel) row[dst] -= q * row[src];
        for (auto& row : basis) row[dst] -= q * row[src];
    };

    std::vector<std::int64_t> diag(k, 0);
    for (std::size_t t = 0; t < k; ++t) {
        for (;;) {
            std::size_t pr = rows, pc = k;
            std::int64_t best = 0;
            for (std::size_t r = t; r < rows; ++r)
                for (std::size_t c = t; c < k; ++c)
                    if (rel[r][c] != 0 && (best == 0 || std::llabs(rel[r][c]) < best)) {
                        best = std::llabs(rel[r][c]);
                        pr = r;
                        pc = c;
                    }
            if (pr == rows) break;
            std::swap(rel[t], rel[pr]);
            if (pc != t) swap_cols(t, pc);
            bool clean = true;
            for (std::size_t r = t + 1; r < rows; ++r) {
                const std::int64_t q = rel[r][t] / rel[t][t];
                if (q != 0)
                    for (std::size_t c = t; c < k; ++c) rel[r][c] -= q * rel[t][c];
                if (rel[r][t] != 0) clean = false;
            }
            for (std::size_t c = t + 1; c < k; ++c) {
                const std::int64_t q = rel[t][c] / rel[t][t];
                if (q != 0) col_sub(c, t, q);
                if (rel[t][c] != 0) clean = false;
            }
            if (clean) break;
        }
        diag[t] = std::llabs(rel[t][t]);
        if (diag[t] == 0) fail(ErrorKind::InternalSoundness, "relation lattice is not of full rank");
    }

    std::vector<std::uint32_t> image_orders;
    std::vector<std::size_t> kept;
    for (std::size_t t = 0; t < k; ++t)
        if (diag[t] > 1) {
            image_orders.push_back(static_cast<std::uint32_t>(diag[t]));
            kept.push_back(t);
        }
    if (image_orders.empty()) image_orders.push_back(1);
    image_ = make_group(image_orders, Mask::kMaxElements);

    image_of_.resize(g.order());
    lift_of_.assign(image_->order(), static_cast<std::uint32_t>(g.order()));
    std::vector<std::int64_t> y(image_->rank(), 0);
    for (std::uint32_t idx = 0; idx < g.order(); ++idx) {
        const auto r = g.residues(Element{idx});
        std::fill(y.begin(), y.end(), 0);
        for (std::size_t j = 0; j < kept.size(); ++j) {
            std::int64_t acc = 0;
            for (std::size_t i = 0; i < k; ++i) acc += static_cast<std::int64_t>(r[i]) * basis[i][kept[j]];
            y[j] = acc;
        }
        const Element q = image_->from_residues(y);
        image_of_[idx] = q.index;
        if (lift_of_[q.index] > idx) lift_of_[q.index] = idx;
    }
    if (image_->order() * kernel_.order() != g.order())
        fail(ErrorKind::InternalSoundness, "quotient order mismatch");
}

Element QuotientMap::operator()(Element a) const {
    if (!source_->contains(a)) fail(ErrorKind::GroupMismatch, "element outside group " + source_->spec_string());
    return Element{image_of_[a.index]};
}

GroupSet QuotientMap::push(const GroupSet& a) const {
    require_same_group(a.group(), source_);
    Mask m;
    a.mask().for_each([&](std::size_t i) { m.set(image_of_[i]); });
    return GroupSet(image_, m);
}

GroupSet QuotientMap::preimage(const GroupSet& q) const {
    require_same_group(q.group(), image_);
    Mask m;
    for (std::size_t i = 0; i < source_->order(); ++i)
        if (q.mask().test(image_of_[i])) m.set(i);
    return GroupSet(source_, m);
}

Subgroup QuotientMap::preimage(const Subgroup& q) const { return Subgroup::from_set(preimage(q.members())); }

Element QuotientMap::lift(Element q) const {
    if (!image_->contains(q)) fail(ErrorKind::GroupMismatch, "element outside quotient group");
    return Element{lift_of_[q.index]};
}

}  // namespace subsum
