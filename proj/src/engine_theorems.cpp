#include <algorithm>

#include "engine_internal.hpp"
#include "subsum/set_algebra.hpp"

namespace subsum::detail {

namespace {

Mask sig_of(const Reduced& r) { return r.g().sumset(r.x, subsum_counts(r.g(), r.s, r.n)); }

Counts leftover(const Group& g, const Counts& s, const Parts& p) { return minus(s, parts_counts(g, p)); }

std::size_t terms_outside(const Counts& s, const Mask& c) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (!c.test(i)) k += s[i];
    return k;
}

struct Item3 {
    Mask k;
    std::uint32_t beta = 0;
};

std::optional<Item3> main_item3(const Reduced& r, const Mask& sig, const Parts& p) {
    const Group& g = r.g();
    if (p.size() != 2 || sig.count() != r.target()) return std::nullopt;
    const Mask w = p[0] & p[1];
    const Mask d = (p[0] | p[1]) - w;
    if (d.count() != 4) return std::nullopt;
    const Mask k = translate_neg(g, d, static_cast<std::uint32_t>(d.first()));
    if (!is_klein_mask(g, k) || !periodic_or_empty(g, w, k)) return std::nullopt;
    if (!support(leftover(g, r.s, p)).subset_of(w)) return std::nullopt;
    const Mask trivial = Mask::single(0);
    if (stabilizer_mask(g, sig) != trivial || stabilizer_mask(g, r.x) != trivial ||
        stabilizer_mask(g, parts_sum(g, r.x, p)) != trivial)
        return std::nullopt;
    std::optional<Item3> out;
    r.x.for_each([&](std::size_t beta) {
        if (out) return;
        Mask rest = r.x;
        rest.reset(beta);
        if (periodic_or_empty(g, rest, k)) out = Item3{k, static_cast<std::uint32_t>(beta)};
    });
    return out;
}

}  // namespace

Outcome main_reduced(const Reduced& r, const EngineOptions& opts) {
    const Group& g = r.g();
    const std::size_t n = r.n, ell = r.ell(), target = r.target();
    const Mask sig = sig_of(r);
    const Mask h = stabilizer_mask(g, sig);

    auto item1 = [&](const Parts& p) { return is_equitable_sizes(p) && parts_sum(g, r.x, p).count() >= target; };
    auto item2 = [&](const Parts& p) {
        if (!is_equitable_sizes(p) || parts_sum(g, r.x, p) != sig) return false;
        const Mask z = coset_z(g, p, h);
        return off_z_excess(p, z) == 0 && support(leftover(g, r.s, p)).subset_of(z);
    };

    const auto mx = maximal_reduced(g, r.x, r.s, r.sprime, n, pick_mode(r.s, ell, n, opts.exhaustive_threshold));
    Outcome out;
    out.max_sumset = mx.size;
    out.heuristic = mx.heuristic;
    auto finish = [&](int item, Parts p, bool pipeline) {
        out.item = item;
        out.parts = std::move(p);
        out.pipeline = pipeline;
        if (item == 2) out.h = h;
        return out;
    };

    const bool large = mx.size >= target;
    try {
        if (large) {
            auto e = equalize_core(g, r.x, mx.parts);
            if (auto* b = std::get_if<Parts>(&e); b && item1(*b)) return finish(1, *b, true);
        } else {
            Parts b = equalize_z_core(g, r.x, seed_core(g, r.x, r.s, mx.parts));
            if (parts_sum(g, r.x, b) == sig) {
                auto e = equalize_core(g, r.x, b);
                if (auto* c = std::get_if<Parts>(&e); c && item2(*c)) return finish(2, *c, true);
            }
        }
    } catch (const Error&) {
        // The exhaustive fallbacks below decide the instance.
    }

    // An exact maximum below the target rules item 1 out.
    const bool try_item1 = large || mx.heuristic;
    if (large) {
        if (auto p = search(r.s, ell, n, item1)) return finish(1, *p, false);
    }
    if (auto p = search(r.s, ell, n, item2)) return finish(2, *p, false);
    if (!large && try_item1) {
        if (auto p = search(r.s, ell, n, item1)) return finish(1, *p, false);
    }
    if (n == 2 && sig.count() == target) {
        std::optional<Item3> w;
        if (auto p = search(r.s, ell, n, [&](const Parts& c) { return (w = main_item3(r, sig, c)).has_value(); })) {
            out.k = w->k;
            out.beta = w->beta;
            return finish(3, *p, false);
        }
    }
    fail(ErrorKind::InternalSoundness, "no item of the partition theorem could be certified");
}

namespace {

bool large_item3(const Reduced& r, const Mask& sig, const Mask& h, const Parts& p, const Mask& k, std::uint32_t alpha) {
    const Group& g = r.g();
    const Mask c = g.translate(k, Element{alpha});
    if (!support(leftover(g, r.s, p)).subset_of(c) || coset_z(g, p, k) != c) return false;
    for (const auto& m : p)
        if ((m - c).count() > 1) return false;
    const Mask ch = g.translate(h, Element{alpha});
    if (sig.count() < g.sumset(r.x, h).count() + terms_outside(r.s, ch) * h.count()) return false;
    if (sig.count() < g.sumset(r.x, k).count() + terms_outside(r.s, c) * k.count()) return false;
    Mask acc = Mask::single(0);
    std::size_t count = 0;
    for (const auto& m : p)
        if (m.subset_of(c)) {
            acc = g.sumset(acc, m);
            ++count;
        }
    if (count == 0) return false;
    return acc == g.translate(k, g.scalar_mul(static_cast<std::int64_t>(count), Element{alpha}));
}

struct Item3Large {
    Mask k;
    std::uint32_t alpha = 0;
};

// K = H first, then the smaller nontrivial subgroups of H; alpha runs over
// coset minima.
std::optional<Item3Large> large_witness(const Reduced& r, const Mask& sig, const Mask& h, const Parts& p) {
    const Group& g = r.g();
    if (!is_equitable_sizes(p) || parts_sum(g, r.x, p) != sig || h.count() == 1) return std::nullopt;
    std::vector<Mask> ks{h};
    for (const auto& rec : g.subgroup_records())
        if (rec.members.count() > 1 && rec.members != h && rec.members.subset_of(h)) ks.push_back(rec.members);
    for (const auto& k : ks)
        for (std::uint32_t a = 0; a < g.order(); ++a) {
            if (g.translate(k, Element{a}).first() != a) continue;
            if (large_item3(r, sig, h, p, k, a)) return Item3Large{k, a};
        }
    return std::nullopt;
}

}  // namespace

Outcome large_n_reduced(const Reduced& r, const EngineOptions& opts) {
    const Group& g = r.g();
    const Mask sig = sig_of(r);
    Outcome o = main_reduced(r, opts);
    if (sig.count() >= r.target()) {
        if (o.item == 3) {
            o.item = 1;
            o.alpha = static_cast<std::uint32_t>(support(r.s).first());
        } else {
            o.item = 2;
        }
        return o;
    }
    const Mask h = stabilizer_mask(g, sig);
    o.h = h;
    std::optional<Item3Large> w;
    if (o.item == 2) w = large_witness(r, sig, h, o.parts);
    if (!w) {
        auto p = search(r.s, r.ell(), r.n, [&](const Parts& c) { return (w = large_witness(r, sig, h, c)).has_value(); });
        if (!p) fail(ErrorKind::InternalSoundness, "no item of the large-n theorem could be certified");
        o.parts = *p;
        o.pipeline = false;
    }
    o.item = 3;
    o.k = w->k;
    o.alpha = w->alpha;
    return o;
}

}  // namespace subsum::detail

namespace subsum {

using namespace detail;

const char* to_string(TheoremTag t) noexcept {
    switch (t) {
        case TheoremTag::Main: return "main";
        case TheoremTag::LargeN: return "large_n";
        case TheoremTag::Special: return "special_structure";
    }
    return "?";
}

bool TheoremCertificate::all_pass() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

TheoremInput TheoremInput::special(const GSequence& s, std::size_t n) {
    const GroupPtr& g = s.group();
    return TheoremInput{GroupSet::singleton(g, g->identity()), Subgroup::trivial(g), s, s, n};
}

void require_main_hypotheses(const TheoremInput& in) {
    const GroupPtr& g = in.group();
    require_same_group(in.X.group(), g);
    require_same_group(in.L.group(), g);
    require_same_group(in.Sprime.group(), g);
    if (in.X.empty()) fail(ErrorKind::HypothesisNotMet, "X must be nonempty");
    if (!is_periodic(in.X, in.L)) fail(ErrorKind::HypothesisNotMet, "L is not inside H(X)");
    if (!in.Sprime.divides(in.S)) fail(ErrorKind::HypothesisNotMet, "S' does not divide S");
    if (in.n < 1 || in.n > in.Sprime.length()) fail(ErrorKind::HypothesisNotMet, "need 1 <= n <= |S'|");
    if (push(QuotientMap(g, in.L), in.Sprime).max_multiplicity() > in.n)
        fail(ErrorKind::HypothesisNotMet, "h(phi_L(S')) exceeds n");
}

std::size_t special_m(const GSequence& s, std::size_t n) {
    if (n < 1 || s.length() <= n) fail(ErrorKind::HypothesisNotMet, "need |S| > n >= 1");
    return std::min({n, s.length() - n, s.length() - s.max_multiplicity()});
}

bool special_hypothesis_holds(const GSequence& s, std::size_t n) {
    if (n < 1 || s.length() <= n) return false;
    return subsum_mask(s, n).count() <= special_m(s, n) + 1;
}

namespace {

struct Reduction {
    std::optional<QuotientMap> q;
    Reduced r;
};

Reduction reduce(const TheoremInput& in) {
    Reduction red;
    if (in.L.is_trivial()) {
        red.r = Reduced{in.group(), in.X.mask(), in.S.counts(), in.Sprime.counts(), in.n};
    } else {
        red.q.emplace(in.group(), in.L);
        const QuotientMap& q = *red.q;
        red.r = Reduced{q.image(), q.push(in.X).mask(), push(q, in.S).counts(), push(q, in.Sprime).counts(), in.n};
    }
    return red;
}

Subgroup lift_subgroup(const Reduction& red, const TheoremInput& in, const Mask& m) {
    if (!red.q) return Subgroup::from_set(GroupSet(in.group(), m));
    return red.q->preimage(Subgroup::from_set(GroupSet(red.q->image(), m)));
}

Element lift_alpha(const Reduction& red, std::uint32_t a) { return red.q ? red.q->lift(Element{a}) : Element{a}; }

// Lowest-index element of X in the class of b.
Element lift_beta(const Reduction& red, const TheoremInput& in, std::uint32_t b) {
    if (!red.q) return Element{b};
    for (const auto& e : in.X.elements())
        if ((*red.q)(e).index == b) return e;
    fail(ErrorKind::InternalSoundness, "beta has no preimage in X");
}

SetPartition lift_partition(const Reduction& red, const TheoremInput& in, const Parts& parts) {
    Parts lifted = red.q ? lift_parts(*red.q, in.S, parts) : parts;
    return SetPartition(in.group(), sorted_parts(std::move(lifted)));
}

std::vector<std::size_t> coset_index_set(const SetPartition& p, const GroupSet& coset) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p.part(i).subset_of(coset)) out.push_back(i);
    return out;
}

TheoremCertificate finalize(TheoremCertificate cert, const TheoremInput& in) {
    cert.checks = validate_certificate(cert, in);
    if (!cert.all_pass()) {
        std::string failed;
        for (const auto& c : cert.checks)
            if (!c.pass) failed += (failed.empty() ? "" : "; ") + c.clause;
        throw SoundnessError("certificate failed validation: " + failed, cert);
    }
    return cert;
}

}  // namespace

TheoremCertificate main_partition_certificate(const TheoremInput& in, const EngineOptions& opts) {
    require_main_hypotheses(in);
    const Reduction red = reduce(in);
    const Outcome o = main_reduced(red.r, opts);
    TheoremCertificate cert;
    cert.theorem = TheoremTag::Main;
    cert.item = o.item;
    cert.L = in.L;
    cert.partition = lift_partition(red, in, o.parts);
    cert.max_sumset = o.max_sumset * in.L.order();
    cert.heuristic = o.heuristic;
    cert.route = o.pipeline ? "pipeline" : "search";
    if (o.item == 2) {
        cert.H = lift_subgroup(red, in, o.h);
        cert.Z = coset_intersection_Z(*cert.partition, *cert.H);
    } else if (o.item == 3) {
        cert.K = lift_subgroup(red, in, o.k);
        cert.beta = lift_beta(red, in, *o.beta);
    }
    return finalize(std::move(cert), in);
}

TheoremCertificate large_n_certificate(const TheoremInput& in, const EngineOptions& opts) {
    require_main_hypotheses(in);
    if (in.Sprime.length() > 2 * in.n) fail(ErrorKind::HypothesisNotMet, "needs |S'| <= 2n");
    const Reduction red = reduce(in);
    const Outcome o = large_n_reduced(red.r, opts);
    TheoremCertificate cert;
    cert.theorem = TheoremTag::LargeN;
    cert.item = o.item;
    cert.L = in.L;
    cert.heuristic = o.heuristic;
    cert.route = o.pipeline ? "pipeline" : "search";
    if (o.item == 1) {
        cert.K = lift_subgroup(red, in, o.k);
        cert.alpha = lift_alpha(red, *o.alpha);
        cert.beta = lift_beta(red, in, *o.beta);
        return finalize(std::move(cert), in);
    }
    cert.partition = lift_partition(red, in, o.parts);
    if (o.item == 3) {
        cert.H = lift_subgroup(red, in, o.h);
        cert.K = lift_subgroup(red, in, o.k);
        cert.alpha = lift_alpha(red, *o.alpha);
        cert.Z = cert.K->coset(*cert.alpha);
        cert.index_set = coset_index_set(*cert.partition, *cert.Z);
    }
    return finalize(std::move(cert), in);
}

namespace {

// S' | S of length n + m with h(S') <= n: the capped sequence with its
// highest-index terms trimmed.
Counts special_sprime(const GSequence& s, std::size_t n, std::size_t m) {
    Counts c = max_bounded_subsequence(s, n, Subgroup::trivial(s.group())).counts();
    std::size_t excess = total(c) - (n + m);
    for (std::size_t i = c.size(); i-- > 0 && excess > 0;) {
        const auto take = std::min<std::size_t>(c[i], excess);
        c[i] -= static_cast<std::uint32_t>(take);
        excess -= take;
    }
    return c;
}

struct Item5 {
    Element x;
    std::size_t j = 0;
};

std::optional<Item5> item5_fields(const Group& g, const Counts& s, const Mask& sig, const Parts& p) {
    const Mask h = stabilizer_mask(g, sig);
    if (h.count() == 1 || parts_sum(g, Mask::single(0), p) != sig) return std::nullopt;
    for (const auto& m : p)
        if (m.count() > 2) return std::nullopt;
    const Mask spare = support(leftover(g, s, p));
    Mask candidates = spare.any() ? Mask::single(spare.first()) : p[0];
    std::optional<Element> x;
    candidates.for_each([&](std::size_t c) {
        if (x) return;
        const Mask coset = g.translate(h, Element{static_cast<std::uint32_t>(c)});
        if (!spare.subset_of(coset)) return;
        for (const auto& m : p)
            if (!m.intersects(coset)) return;
        x = Element{static_cast<std::uint32_t>(coset.first())};
    });
    if (!x) return std::nullopt;
    for (std::size_t j = 0; j < p.size(); ++j) {
        Mask acc = Mask::single(0);
        for (std::size_t i = 0; i < p.size(); ++i)
            if (i != j) acc = g.sumset(acc, p[i]);
        if (acc.count() == sig.count()) return Item5{*x, j};
    }
    return std::nullopt;
}

bool is_coset_of(const Group& g, const Mask& supp, std::size_t order, Mask& k) {
    if (supp.count() != order) return false;
    k = translate_neg(g, supp, static_cast<std::uint32_t>(supp.first()));
    return is_subgroup_mask(g, k);
}

}  // namespace

TheoremCertificate special_structure_certificate(const GSequence& s, std::size_t n, const EngineOptions& opts) {
    if (!special_hypothesis_holds(s, n)) fail(ErrorKind::HypothesisNotMet, "needs |S| > n >= 1 and |Sigma_n(S)| <= m + 1");
    const Group& g = s.g();
    const GroupPtr& gp = s.group();
    const TheoremInput in = TheoremInput::special(s, n);
    const std::size_t m = special_m(s, n);
    const Mask sig = subsum_mask(s, n);
    const Mask supp = s.support().mask();

    TheoremCertificate cert;
    cert.theorem = TheoremTag::Special;
    cert.m = m;
    cert.route = "pipeline";
    auto structural = [&](int item) {
        cert.item = item;
        return finalize(std::move(cert), in);
    };

    if (supp.count() == 1) return structural(3);
    if (sig.count() == m + 1) {
        Mask k;
        const Element x{static_cast<std::uint32_t>(supp.first())};
        if (n == 2 && s.length() == supp.count() && is_coset_of(g, supp, 4, k) && is_klein_mask(g, k)) {
            cert.K = Subgroup::from_set(GroupSet(gp, k));
            cert.x = x;
            return structural(1);
        }
        if (m == 2 && is_coset_of(g, supp, 3, k)) {
            cert.K = Subgroup::from_set(GroupSet(gp, k));
            cert.x = x;
            return structural(2);
        }
        if (supp.count() <= 2) return structural(3);
        const std::uint32_t h = s.max_multiplicity();
        if (h + m >= s.length())
            for (const auto& e : s.support().elements()) {
                if (s.count(e) != h) continue;
                for (std::uint32_t d = 0; d < g.order(); ++d) {
                    Mask allowed = Mask::single(e.index);
                    allowed.set(g.add_index(e.index, d));
                    allowed.set(g.add_index(e.index, g.neg_index(d)));
                    if (!supp.subset_of(allowed)) continue;
                    cert.x = e;
                    cert.d = Element{d};
                    return structural(4);
                }
            }
    }

    const Counts sprime = special_sprime(s, n, m);
    const std::size_t ell = n + m;
    std::optional<Parts> parts;
    if (sig.count() <= m) {
        try {
            const Outcome o = main_reduced(Reduced{gp, Mask::single(0), s.counts(), sprime, n}, opts);
            if (item5_fields(g, s.counts(), sig, o.parts)) parts = o.parts;
        } catch (const Error&) {
            // Fall through to the search.
        }
    }
    if (!parts) {
        cert.route = "search";
        parts = search(s.counts(), ell, n, [&](const Parts& c) { return item5_fields(g, s.counts(), sig, c).has_value(); });
    }
    if (!parts) fail(ErrorKind::InternalSoundness, "no item of the special-structure theorem could be certified");
    cert.item = 5;
    cert.partition = SetPartition(gp, sorted_parts(*parts));
    const auto f = item5_fields(g, s.counts(), sig, cert.partition->masks());
    cert.H = Subgroup::from_set(GroupSet(gp, stabilizer_mask(g, sig)));
    cert.x = f->x;
    cert.j = f->j;
    return finalize(std::move(cert), in);
}

}  // namespace subsum
