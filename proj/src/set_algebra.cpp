#include "subsum/set_algebra.hpp"

#include "subsum/error.hpp"

namespace subsum {

namespace {

void require_nonempty(const GroupSet& a, const char* what) {
    if (a.empty()) fail(ErrorKind::EmptyOperand, what);
}

}  // namespace

Mask stabilizer_mask(const Group& g, const Mask& a) {
    Mask h = g.full_mask();
    a.for_each([&](std::size_t x) {
        h &= g.translate(a, Element{g.neg_index(static_cast<std::uint32_t>(x))});
    });
    return h;
}

Mask sumset_masks(const Group& g, std::span<const Mask> sets) {
    Mask acc = Mask::single(0);
    for (const auto& s : sets) acc = g.sumset(acc, s);
    return acc;
}

GroupSet sumset(const GroupSet& a, const GroupSet& b) {
    require_same_group(a.group(), b.group());
    require_nonempty(a, "sumset operand is empty");
    require_nonempty(b, "sumset operand is empty");
    return GroupSet(a.group(), a.g().sumset(a.mask(), b.mask()));
}

GroupSet sumset(std::span<const GroupSet> sets) {
    if (sets.empty()) fail(ErrorKind::EmptyOperand, "sumset of an empty list");
    require_nonempty(sets[0], "sumset operand is empty");
    GroupSet acc = sets[0];
    for (std::size_t i = 1; i < sets.size(); ++i) acc = sumset(acc, sets[i]);
    return acc;
}

Subgroup stabilizer(const GroupSet& a) {
    require_nonempty(a, "stabilizer of the empty set");
    return Subgroup::from_set(GroupSet(a.group(), stabilizer_mask(a.g(), a.mask())));
}

bool is_periodic(const GroupSet& a) {
    require_nonempty(a, "periodicity of the empty set");
    return stabilizer_mask(a.g(), a.mask()).count() > 1;
}

bool is_periodic(const GroupSet& a, const Subgroup& h) {
    require_same_group(a.group(), h.group());
    require_nonempty(a, "periodicity of the empty set");
    return h.mask().subset_of(stabilizer_mask(a.g(), a.mask()));
}

std::size_t representation_count(const GroupSet& a, const GroupSet& b, Element x) {
    require_same_group(a.group(), b.group());
    require_nonempty(a, "representation count with an empty operand");
    require_nonempty(b, "representation count with an empty operand");
    if (!a.g().contains(x)) fail(ErrorKind::GroupMismatch, "element outside group " + a.g().spec_string());
    std::size_t count = 0;
    for (auto u : a.elements())
        if (b.contains(a.g().sub(x, u))) ++count;
    return count;
}

GroupSet unique_expression_elements(const GroupSet& a, const GroupSet& b) {
    require_same_group(a.group(), b.group());
    require_nonempty(a, "unique expressions with an empty operand");
    require_nonempty(b, "unique expressions with an empty operand");
    std::vector<std::uint32_t> reps(a.g().order(), 0);
    for (auto u : a.elements())
        for (auto v : b.elements()) ++reps[a.g().add_index(u.index, v.index)];
    Mask out;
    for (std::size_t i = 0; i < reps.size(); ++i)
        if (reps[i] == 1) out.set(i);
    return GroupSet(a.group(), out);
}

std::int64_t kneser_deficiency(std::span<const GroupSet> sets) {
    const GroupSet total = sumset(sets);
    const Group& g = total.g();
    const Mask h = stabilizer_mask(g, total.mask());
    const auto hs = static_cast<std::int64_t>(h.count());
    std::int64_t classes = 0;
    for (const auto& a : sets) classes += static_cast<std::int64_t>(g.sumset(a.mask(), h).count()) / hs;
    const auto n = static_cast<std::int64_t>(sets.size());
    return static_cast<std::int64_t>(total.size()) - (classes - n + 1) * hs;
}

bool pullout_check(const GroupSet& a, const GroupSet& b) {
    const GroupSet ab = sumset(a, b);
    if (ab.size() + 1 >= a.size() + b.size()) return false;
    for (auto x : b.elements())
        if (sumset(a, b.without(x)) != ab)
            fail(ErrorKind::InternalSoundness, "removing " + a.g().format_element(x) + " shrinks the sumset");
    return true;
}

bool is_quasi_periodic(const GroupSet& a) {
    if (a.empty()) return false;
    const Group& g = a.g();
    if (stabilizer_mask(g, a.mask()).count() > 1) return true;
    for (const auto& rec : g.subgroup_records()) {
        if (rec.members.count() == 1) continue;
        Mask seen;
        bool found = false;
        a.mask().for_each([&](std::size_t c) {
            if (found || seen.test(c)) return;
            const Mask coset = g.translate(rec.members, Element{static_cast<std::uint32_t>(c)});
            seen |= coset;
            const Mask rest = a.mask() - coset;
            if (rest.any() && g.sumset(rest, rec.members) == rest) found = true;
        });
        if (found) return true;
    }
    return false;
}

QuasiPeriodicDecomposition reduced_quasi_periodic_decomposition(const GroupSet& a) {
    require_nonempty(a, "decomposition of the empty set");
    const Group& g = a.g();
    const GroupPtr& gp = a.group();
    const Mask stab = stabilizer_mask(g, a.mask());
    if (stab.count() > 1)
        return {Subgroup::from_set(GroupSet(gp, stab)), a, GroupSet(gp), true};

    std::optional<QuasiPeriodicDecomposition> best;
    for (const auto& rec : g.subgroup_records()) {
        if (rec.members.count() == 1) continue;
        Mask seen;
        a.mask().for_each([&](std::size_t c) {
            if (seen.test(c)) return;
            const Mask coset = g.translate(rec.members, Element{static_cast<std::uint32_t>(c)});
            seen |= coset;
            const Mask rem = a.mask() & coset;
            const Mask rest = a.mask() - coset;
            if (rest.none() || g.sumset(rest, rec.members) != rest) return;
            if (best) {
                const auto bc = best->remainder.size(), rc = rem.count();
                if (bc < rc) return;
                if (bc == rc) {
                    if (best->remainder.mask() < rem) return;
                    if (best->remainder.mask() == rem && best->subgroup.mask() < rec.members) return;
                }
            }
            const GroupSet rem_set(gp, rem);
            if (is_quasi_periodic(rem_set)) return;
            best = QuasiPeriodicDecomposition{Subgroup::from_set(GroupSet(gp, rec.members)), GroupSet(gp, rest),
                                              rem_set, true};
        });
    }
    if (best) return *best;
    return {Subgroup::trivial(gp), GroupSet(gp), a, true};
}

std::optional<Element> punctured_coset_check(const GroupSet& y, const Subgroup& h) {
    require_same_group(y.group(), h.group());
    require_nonempty(y, "punctured coset check of the empty set");
    if (h.order() < 3) fail(ErrorKind::Precondition, "punctured coset check needs |H| >= 3");
    const Group& g = y.g();
    for (auto y0 : y.elements()) {
        Mask rest = y.mask();
        rest.reset(y0.index);
        if (rest.any() && g.sumset(rest, h.mask()) != rest) continue;
        if (stabilizer_mask(g, y.mask()).count() != 1)
            fail(ErrorKind::InternalSoundness, "punctured coset " + y.to_string() + " is periodic");
        return y0;
    }
    return std::nullopt;
}

bool kt_extension_bound_check(const GroupSet& a, const GroupSet& b, Element x) {
    const GroupSet ab = sumset(a, b);
    const Group& g = a.g();
    const Mask h = stabilizer_mask(g, ab.mask());
    if (stabilizer_mask(g, b.mask()) != h)
        fail(ErrorKind::HypothesisNotMet, "H(A+B) differs from H(B)");
    const GroupSet ax = a.with(x);
    const auto lhs = sumset(ax, b).size();
    const auto rhs = g.sumset(ax.mask(), h).count() + g.sumset(b.mask(), h).count() - h.count();
    return lhs >= rhs;
}

}  // namespace subsum
