#include <algorithm>

#include "engine_internal.hpp"
#include "subsum/set_algebra.hpp"

namespace subsum::detail {

namespace {

std::size_t weight(const Parts& parts) {
    std::size_t w = 0;
    for (const auto& m : parts) w += m.count();
    return w;
}

std::size_t phi_size(const Group& g, const Parts& parts, const Mask& h) {
    std::size_t total_cosets = 0;
    for (const auto& m : parts) total_cosets += g.sumset(m, h).count();
    return total_cosets / h.count();
}

// Sum over parts of the extra elements sharing an H-coset off Z.
std::size_t coset_excess(const Group& g, const Parts& parts, const Mask& h, const Mask& z) {
    std::size_t excess = 0;
    for (const auto& m : parts)
        (m - z).for_each([&](std::size_t y) {
            excess += (g.translate(h, Element{static_cast<std::uint32_t>(y)}) & m).count() - 1;
        });
    return excess;
}

std::size_t outside(const Counts& spare, const Mask& z) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < spare.size(); ++i)
        if (spare[i] && !z.test(i)) c += spare[i];
    return c;
}

std::optional<Exceptional> exceptional_shape(const Group& g, const Mask& x, const Counts& s, const Parts& b) {
    if (b.size() != 2) return std::nullopt;
    const Mask w = b[0] & b[1];
    const Mask d = (b[0] | b[1]) - w;
    if (d.count() != 4) return std::nullopt;
    const Mask k = translate_neg(g, d, static_cast<std::uint32_t>(d.first()));
    if (!is_klein_mask(g, k) || !periodic_or_empty(g, w, k)) return std::nullopt;
    const Mask sig = g.sumset(x, subsum_counts(g, s, 2));
    if (sig != parts_sum(g, x, b) || stabilizer_mask(g, sig).count() != 1) return std::nullopt;
    if (sig.count() != total(s) - 2 + x.count()) return std::nullopt;
    std::optional<Exceptional> out;
    x.for_each([&](std::size_t beta) {
        if (out) return;
        Mask rest = x;
        rest.reset(beta);
        if (periodic_or_empty(g, rest, k)) out = Exceptional{b, k, static_cast<std::uint32_t>(beta)};
    });
    return out;
}

bool unique_off_z(const Group& g, const Parts& parts, const Mask& h, const Mask& z) {
    return coset_excess(g, parts, h, z) == 0;
}

}  // namespace

Parts seed_core(const Group& g, const Mask& x, const Counts& s, const Parts& p) {
    const std::size_t n = p.size();
    if (!divides(parts_counts(g, p), s)) fail(ErrorKind::HypothesisNotMet, "S(A) does not divide S");
    const Mask v = parts_sum(g, x, p);
    const std::size_t w = weight(p);
    if (v.count() + n >= x.count() + w) fail(ErrorKind::HypothesisNotMet, "sumset is not below |X| + sum |A_i| - n");
    const Mask h = stabilizer_mask(g, v);

    auto done = [&](const Parts& b, const Counts& spare) {
        const Mask z = coset_z(g, b, h);
        return parts_sum(g, x, b) == v && support(spare).subset_of(z) && unique_off_z(g, b, h, z);
    };

    Parts b = p;
    Counts spare = minus(s, parts_counts(g, p));
    climb(g, b, spare, MoveKinds{true, true, true},
          [&](const Parts& c, const Counts&) { return parts_sum(g, x, c) == v; },
          [&](const Parts& c, const Counts& sp) {
              const Mask z = coset_z(g, c, h);
              return Score{static_cast<std::int64_t>(phi_size(g, c, h)), -static_cast<std::int64_t>(outside(sp, z)),
                           -static_cast<std::int64_t>(coset_excess(g, c, h, z))};
          },
          move_cap(g, total(s), n));
    if (done(b, spare)) return b;
    auto found = search(s, w, n, [&](const Parts& c) { return done(c, minus(s, parts_counts(g, c))); });
    if (!found) fail(ErrorKind::HypothesisNotMet, "no partition with the seed normal form exists");
    return *found;
}

Parts equalize_z_core(const Group& g, const Mask& x, const Parts& p) {
    const std::size_t n = p.size();
    const Counts s = parts_counts(g, p);
    const Mask v = parts_sum(g, x, p);
    const Mask h = stabilizer_mask(g, v);
    const Mask z = coset_z(g, p, h);
    if (!unique_off_z(g, p, h, z)) fail(ErrorKind::HypothesisNotMet, "parts are not unique in their cosets off Z");
    if (v.count() + n + 1 >= x.count() + weight(p) + h.count())
        fail(ErrorKind::HypothesisNotMet, "sumset is not below |X| + sum |A_i| - n + |H| - 1");

    auto feasible = [&](const Parts& c) { return parts_sum(g, x, c) == v && z.subset_of(coset_z(g, c, h)); };
    Parts b = p;
    Counts spare(s.size(), 0);
    climb(g, b, spare, MoveKinds{true, true, false}, [&](const Parts& c, const Counts&) { return feasible(c); },
          [&](const Parts& c, const Counts&) { return Score{-static_cast<std::int64_t>(off_z_excess(c, z)), 0, 0}; },
          move_cap(g, total(s), n));
    if (off_z_excess(b, z) == 0) return b;
    auto found = search(s, total(s), n, [&](const Parts& c) { return off_z_excess(c, z) == 0 && feasible(c); });
    if (!found) fail(ErrorKind::HypothesisNotMet, "no partition with at most one element off Z per part exists");
    return *found;
}

std::variant<Parts, Exceptional> equalize_core(const Group& g, const Mask& x, const Parts& p) {
    const std::size_t n = p.size();
    const Counts s = parts_counts(g, p);
    const std::size_t w = total(s);
    const Mask v = parts_sum(g, x, p);
    const Mask sig = g.sumset(x, subsum_counts(g, s, n));
    const std::size_t bound = w - n + x.count();
    const std::size_t t = std::min(bound, sig.count());
    if (v.count() < t) fail(ErrorKind::HypothesisNotMet, "sumset is below the equalization threshold");
    if (n == 1 || w <= n + 1) return p;

    const Mask h = stabilizer_mask(g, v);
    const Mask z = coset_z(g, p, h);
    // Small-sumset side: Z, the sumset and the off-Z bound are all frozen.
    const bool brunch = sig.count() <= bound && off_z_excess(p, z) == 0;
    auto feasible = [&](const Parts& c) {
        if (!brunch) return parts_sum(g, x, c).count() >= t;
        return off_z_excess(c, z) == 0 && coset_z(g, c, h) == z && parts_sum(g, x, c) == v;
    };

    Parts b = p;
    Counts spare(s.size(), 0);
    climb(g, b, spare, MoveKinds{true, false, false}, [&](const Parts& c, const Counts&) { return feasible(c); },
          [&](const Parts& c, const Counts&) { return Score{-static_cast<std::int64_t>(sum_of_squares(c)), 0, 0}; },
          move_cap(g, w, n));
    if (is_equitable_sizes(b)) return b;
    if (auto found = search(s, w, n, [&](const Parts& c) { return is_equitable_sizes(c) && feasible(c); }))
        return *found;
    std::optional<Exceptional> ex;
    search(s, w, n, [&](const Parts& c) {
        ex = exceptional_shape(g, x, s, c);
        return ex.has_value();
    });
    if (ex) return *ex;
    fail(ErrorKind::InternalSoundness, "no equitable repartition and no exceptional structure");
}

}  // namespace subsum::detail

namespace subsum {

using namespace detail;

namespace {

void require_nonempty(const GroupSet& x) {
    if (x.empty()) fail(ErrorKind::HypothesisNotMet, "X must be nonempty");
}

}  // namespace

SetPartition normalize_seed(const GroupSet& x, const GSequence& s, const SetPartition& p) {
    require_same_group(x.group(), s.group());
    require_same_group(x.group(), p.group());
    require_nonempty(x);
    return SetPartition(s.group(), sorted_parts(seed_core(s.g(), x.mask(), s.counts(), p.masks())));
}

SetPartition normalize_equalize_Z(const GroupSet& x, const SetPartition& p) {
    require_same_group(x.group(), p.group());
    require_nonempty(x);
    return SetPartition(p.group(), sorted_parts(equalize_z_core(p.g(), x.mask(), p.masks())));
}

std::variant<SetPartition, ExceptionalStructure> equalize_sizes(const GroupSet& x, const GSequence& s,
                                                                const SetPartition& p) {
    require_same_group(x.group(), s.group());
    require_same_group(x.group(), p.group());
    require_nonempty(x);
    if (!(underlying_sequence(p) == s)) fail(ErrorKind::HypothesisNotMet, "S(A) must equal S");
    auto r = equalize_core(s.g(), x.mask(), p.masks());
    if (auto* parts = std::get_if<Parts>(&r)) return SetPartition(s.group(), sorted_parts(*parts));
    const auto& ex = std::get<Exceptional>(r);
    const GroupPtr& g = s.group();
    return ExceptionalStructure{SetPartition(g, ex.parts), Subgroup::from_set(GroupSet(g, ex.k)), Element{ex.beta},
                                GroupSet(g, ex.parts[0] & ex.parts[1])};
}

namespace {

// Shared hypothesis check: leftover in Z, at most one element off Z per part,
// Z an H-periodic subset of every A_i + H.
void require_frozen_shape(const Group& g, const Counts& s, const Parts& parts, const Mask& h, const Mask& z) {
    const Counts used = parts_counts(g, parts);
    if (!divides(used, s)) fail(ErrorKind::HypothesisNotMet, "S(A) does not divide S");
    if (!support(minus(s, used)).subset_of(z)) fail(ErrorKind::HypothesisNotMet, "leftover terms leave Z");
    for (const auto& m : parts)
        if ((m - z).count() > 1) fail(ErrorKind::HypothesisNotMet, "a part has two elements off Z");
    if (g.sumset(z, h) != z && z.any()) fail(ErrorKind::HypothesisNotMet, "Z is not H-periodic");
    if (!z.subset_of(coset_z(g, parts, h))) fail(ErrorKind::HypothesisNotMet, "Z is not inside every A_i + H");
}

}  // namespace

bool subsums_equal_sumset_check(const GroupSet& x, const GSequence& s, const SetPartition& p, const Subgroup& h,
                                const GroupSet& z) {
    require_same_group(x.group(), s.group());
    require_same_group(x.group(), p.group());
    require_same_group(x.group(), h.group());
    require_same_group(x.group(), z.group());
    require_nonempty(x);
    const Group& g = s.g();
    const Mask v = parts_sum(g, x.mask(), p.masks());
    if (!h.mask().subset_of(stabilizer_mask(g, v))) fail(ErrorKind::HypothesisNotMet, "H does not stabilize the sumset");
    require_frozen_shape(g, s.counts(), p.masks(), h.mask(), z.mask());
    return g.sumset(x.mask(), subsum_mask(s, p.size())) == v;
}

bool frozen_shift_check(const GroupSet& x, const GSequence& s, const SetPartition& p, Element shift, std::size_t ell) {
    require_same_group(x.group(), s.group());
    require_same_group(x.group(), p.group());
    require_nonempty(x);
    const Group& g = s.g();
    const std::size_t n = p.size();
    const Mask v = parts_sum(g, x.mask(), p.masks());
    const Mask h = stabilizer_mask(g, v);
    const Mask z = g.translate(h, shift);
    require_frozen_shape(g, s.counts(), p.masks(), h, z);
    const std::size_t spare = s.length() - p.weight();
    if (ell < n || ell > n + spare) fail(ErrorKind::HypothesisNotMet, "ell outside [n, n + |leftover|]");
    const Element offset = g.scalar_mul(static_cast<std::int64_t>(ell - n), shift);
    return g.sumset(x.mask(), subsum_mask(s, ell)) == g.translate(v, offset);
}

}  // namespace subsum
