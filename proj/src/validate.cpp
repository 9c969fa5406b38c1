#include <algorithm>

#include "subsum/engine.hpp"
#include "subsum/set_algebra.hpp"

namespace subsum {

namespace {

class Clauses {
public:
    void add(std::string clause, bool pass) { checks_.push_back(Check{std::move(clause), pass}); }
    std::vector<Check> take() { return std::move(checks_); }

private:
    std::vector<Check> checks_;
};

GroupSet sum_of(const GroupSet& x, const std::vector<GroupSet>& parts) {
    GroupSet acc = x;
    for (const auto& a : parts) acc = sumset(acc, a);
    return acc;
}

bool periodic_or_empty(const GroupSet& a, const Subgroup& k) { return a.empty() || is_periodic(a, k); }

// Coset of K inside G, i.e. the set is nonempty and equals y + K for y in it.
bool is_coset(const GroupSet& a, const Subgroup& k) { return !a.empty() && a == k.coset(a.min_element()); }

GSequence leftover(const TheoremInput& in, const SetPartition& p) {
    const GSequence used = underlying_sequence(p);
    return used.divides(in.S) ? in.S.remove(used) : GSequence(in.group());
}

void require_group(const GroupPtr& expect, const GroupPtr& got, const char* what) {
    if (!same_group(expect, got)) fail(ErrorKind::ValidationInput, std::string(what) + " belongs to another group");
}

// Shared partition clauses: n nonempty parts, S(A) | S, |S(A)| = |S'|, and
// |A_i + L| = |A_i||L|.
void shape(Clauses& c, const TheoremInput& in, const SetPartition& p) {
    c.add("n parts", p.size() == in.n);
    c.add("S(A) divides S", underlying_sequence(p).divides(in.S));
    c.add("|S(A)| = |S'|", p.weight() == in.Sprime.length());
    bool distinct = true;
    for (const auto& a : p.parts()) distinct = distinct && coset_hull(a, in.L).size() == a.size() * in.L.order();
    c.add("parts L-distinct", distinct);
}

const SetPartition* require_partition(Clauses& c, const TheoremCertificate& cert) {
    c.add("partition present", cert.partition.has_value());
    return cert.partition ? &*cert.partition : nullptr;
}

void main_items(Clauses& c, const TheoremCertificate& cert, const TheoremInput& in) {
    const GroupSet sig = sumset(in.X, subsum_set(in.S, in.n));
    const std::size_t bound = (in.Sprime.length() - in.n) * in.L.order() + in.X.size();
    const SetPartition* p = require_partition(c, cert);
    if (!p) return;
    shape(c, in, *p);
    const GroupSet v = sum_of(in.X, p->parts());
    if (cert.item == 1) {
        c.add("equitable", is_equitable(*p));
        c.add("X + sum A_i inside X + Sigma_n(S)", v.subset_of(sig));
        c.add("|X + sum A_i| >= (|S'| - n)|L| + |X|", v.size() >= bound);
    } else if (cert.item == 2) {
        const Subgroup h = stabilizer(sig);
        const GroupSet z = coset_intersection_Z(*p, h);
        c.add("equitable", is_equitable(*p));
        c.add("X + Sigma_n(S) = X + sum A_i", v == sig);
        c.add("H = H(X + Sigma_n(S))", cert.H && *cert.H == h);
        c.add("Z = intersection of A_i + H", cert.Z && *cert.Z == z);
        c.add("leftover support inside Z", leftover(in, *p).support().subset_of(z));
        bool off = true;
        for (const auto& a : p->parts()) off = off && (a - z).size() <= 1;
        c.add("|A_i \\ Z| <= 1", off);
    } else if (cert.item == 3) {
        c.add("n = 2", p->size() == 2);
        c.add("K and beta present", cert.K.has_value() && cert.beta.has_value());
        if (p->size() != 2 || !cert.K || !cert.beta) return;
        const Subgroup& k = *cert.K;
        c.add("L <= K", in.L.subgroup_of(k));
        c.add("K/L is Klein four", quotient_is_klein(k, in.L));
        c.add("beta in X", in.X.contains(*cert.beta));
        c.add("X \\ (beta + L) K-periodic", periodic_or_empty(in.X - in.L.coset(*cert.beta), k));
        const GroupSet a1 = coset_hull(p->part(0), in.L), a2 = coset_hull(p->part(1), in.L);
        const GroupSet w = a1 & a2;
        c.add("(A_1 + L) n (A_2 + L) K-periodic", periodic_or_empty(w, k));
        c.add("leftover support inside (A_1 + L) n (A_2 + L)", leftover(in, *p).support().subset_of(w));
        c.add("symmetric difference is a K-coset", is_coset((a1 | a2) - w, k));
        c.add("H(X + Sigma_n(S)) = L", stabilizer(sig) == in.L);
        c.add("H(X + sum A_i) = L", stabilizer(v) == in.L);
        c.add("H(X) = L", stabilizer(in.X) == in.L);
        c.add("|X + Sigma_n(S)| = (|S'| - n)|L| + |X|", sig.size() == bound);
    } else {
        c.add("item in 1..3", false);
    }
}

void large_items(Clauses& c, const TheoremCertificate& cert, const TheoremInput& in) {
    const GroupSet sig = sumset(in.X, subsum_set(in.S, in.n));
    const std::size_t l = in.L.order();
    const std::size_t bound = (in.Sprime.length() - in.n) * l + in.X.size();
    c.add("|S'| <= 2n", in.Sprime.length() <= 2 * in.n);
    if (cert.item == 1) {
        c.add("n = 2", in.n == 2);
        c.add("K, alpha and beta present", cert.K && cert.alpha && cert.beta);
        if (!cert.K || !cert.alpha || !cert.beta) return;
        const Subgroup& k = *cert.K;
        const GroupSet hull = coset_hull(in.S.support(), in.L);
        c.add("|S'| = |S|", in.Sprime.length() == in.S.length());
        c.add("|S| = |supp(phi_L(S))|", hull.size() == in.S.length() * l);
        c.add("L <= K", in.L.subgroup_of(k));
        c.add("K/L is Klein four", quotient_is_klein(k, in.L));
        c.add("supp(phi_L(S)) = alpha + K/L", hull == k.coset(*cert.alpha));
        c.add("beta in X", in.X.contains(*cert.beta));
        c.add("X \\ (beta + L) K-periodic", periodic_or_empty(in.X - in.L.coset(*cert.beta), k));
        const Element two_alpha = in.group()->scalar_mul(2, *cert.alpha);
        const GroupSet shifted = sumset(in.X, (k.members() - in.L.members()).translate(two_alpha));
        c.add("X + Sigma_n(S) = X + (K \\ L) + 2 alpha", sig == shifted);
        c.add("|X + Sigma_n(S)| = |X| + 2|L|", sig.size() == in.X.size() + 2 * l);
        c.add("|X + Sigma_n(S)| = (|S| - n)|L| + |X|", sig.size() == (in.S.length() - in.n) * l + in.X.size());
        return;
    }
    const SetPartition* p = require_partition(c, cert);
    if (!p) return;
    shape(c, in, *p);
    c.add("equitable", is_equitable(*p));
    const GroupSet v = sum_of(in.X, p->parts());
    if (cert.item == 2) {
        c.add("X + sum A_i inside X + Sigma_n(S)", v.subset_of(sig));
        c.add("|X + sum A_i| >= (|S'| - n)|L| + |X|", v.size() >= bound);
        return;
    }
    if (cert.item != 3) {
        c.add("item in 1..3", false);
        return;
    }
    c.add("H, K and alpha present", cert.H && cert.K && cert.alpha);
    if (!cert.H || !cert.K || !cert.alpha) return;
    const Subgroup h = stabilizer(sig);
    const Subgroup& k = *cert.K;
    const Element alpha = *cert.alpha;
    c.add("H = H(X + Sigma_n(S))", *cert.H == h);
    c.add("L < K proper", in.L.subgroup_of(k) && k.order() > l);
    c.add("K <= H", k.subgroup_of(h));
    c.add("(a) X + Sigma_n(S) = X + sum A_i", sig == v);

    const GroupSet ck = k.coset(alpha), chh = h.coset(alpha);
    GroupSet meet = GroupSet::full(in.group());
    for (const auto& a : p->parts()) meet &= coset_hull(a, k);
    c.add("(b) leftover support inside alpha + K", leftover(in, *p).support().subset_of(ck));
    c.add("(b) alpha + K = intersection of A_i + K", meet == ck);
    bool off = true;
    for (const auto& a : p->parts()) off = off && (a - ck).size() <= 1;
    c.add("(b) |A_i \\ (alpha + K)| <= 1", off);

    const std::size_t out_h = in.S.length() - in.S.restrict(chh).length();
    const std::size_t out_k = in.S.length() - in.S.restrict(ck).length();
    c.add("(c) |X + Sigma_n(S)| >= |X + H| + |S off alpha + H| |H|",
          sig.size() >= coset_hull(in.X, h).size() + out_h * h.order());
    c.add("(c) |X + Sigma_n(S)| >= |X + K| + |S off alpha + K| |K|",
          sig.size() >= coset_hull(in.X, k).size() + out_k * k.order());

    std::vector<std::size_t> ik;
    GroupSet acc = in.L.members();
    for (std::size_t i = 0; i < p->size(); ++i)
        if (p->part(i).subset_of(ck)) {
            ik.push_back(i);
            acc = sumset(acc, p->part(i));
        }
    c.add("(d) I_K nonempty", !ik.empty());
    c.add("(d) I_K matches the certificate", ik == cert.index_set);
    const Element shift = in.group()->scalar_mul(static_cast<std::int64_t>(ik.size()), alpha);
    c.add("(d) L + sum over I_K of A_i = alpha |I_K| + K", !ik.empty() && acc == k.coset(shift));
}

// Items 1-4 as structure on S alone.
bool special_item1(const GSequence& s, std::size_t n, const Subgroup& k, Element x) {
    return n == 2 && s.length() == s.support().size() && quotient_is_klein(k, Subgroup::trivial(s.group())) &&
           s.support() == k.coset(x);
}

bool special_item2(const GSequence& s, std::size_t m, const Subgroup& k, Element x) {
    return m == 2 && k.order() == 3 && s.support() == k.coset(x);
}

bool special_item4(const GSequence& s, std::size_t m, Element x, Element d) {
    const Group& g = s.g();
    const GroupSet allowed = GroupSet::of(s.group(), std::vector<Element>{g.sub(x, d), x, g.add(x, d)});
    return s.support().subset_of(allowed) && s.count(x) == s.max_multiplicity() &&
           s.max_multiplicity() + m >= s.length();
}

void special_items(Clauses& c, const TheoremCertificate& cert, const TheoremInput& in) {
    const GSequence& s = in.S;
    const std::size_t n = in.n;
    c.add("|S| > n >= 1", n >= 1 && s.length() > n);
    if (n < 1 || s.length() <= n) return;
    const std::size_t m = std::min({n, s.length() - n, s.length() - s.max_multiplicity()});
    const GroupSet sig = subsum_set(s, n);
    const GroupSet supp = s.support();
    c.add("m = min{n, |S| - n, |S| - h(S)}", cert.m && *cert.m == m);
    c.add("|Sigma_n(S)| <= m + 1", sig.size() <= m + 1);
    if (cert.item >= 1 && cert.item <= 4)
        c.add("items 1-4 need |Sigma_n(S)| = m + 1 or |supp(S)| = 1", sig.size() == m + 1 || supp.size() == 1);
    switch (cert.item) {
        case 1:
            c.add("K and x present", cert.K && cert.x);
            if (cert.K && cert.x) c.add("n = 2, |S| = |supp(S)|, supp(S) = x + K with K Klein", special_item1(s, n, *cert.K, *cert.x));
            return;
        case 2:
            c.add("K and x present", cert.K && cert.x);
            if (cert.K && cert.x) c.add("m = 2, supp(S) = x + K with |K| = 3", special_item2(s, m, *cert.K, *cert.x));
            return;
        case 3: c.add("|supp(S)| <= 2", supp.size() <= 2); return;
        case 4:
            c.add("x and d present", cert.x && cert.d);
            if (cert.x && cert.d)
                c.add("supp(S) in {x - d, x, x + d}, v_x(S) = h(S) >= |S| - m", special_item4(s, m, *cert.x, *cert.d));
            return;
        case 5: break;
        default: c.add("item in 1..5", false); return;
    }
    const SetPartition* p = require_partition(c, cert);
    c.add("x and j present", cert.x && cert.j);
    if (!p || !cert.x || !cert.j) return;
    const Subgroup h = stabilizer(sig);
    const GroupSet coset = h.coset(*cert.x);
    c.add("n parts", p->size() == n);
    c.add("S(A) divides S", underlying_sequence(*p).divides(s));
    c.add("|S(A)| = n + m", p->weight() == n + m);
    c.add("sum A_i = Sigma_n(S)", sum_of(GroupSet::singleton(s.group(), s.g().identity()), p->parts()) == sig);
    c.add("H nontrivial", !h.is_trivial());
    c.add("leftover support inside x + H", leftover(in, *p).support().subset_of(coset));
    bool small = true, meets = true;
    for (const auto& a : p->parts()) {
        small = small && a.size() <= 2;
        meets = meets && a.intersects(coset);
    }
    c.add("|A_i| <= 2", small);
    c.add("(x + H) meets every A_i", meets);
    bool stationary = *cert.j < p->size();
    if (stationary) {
        GroupSet acc = GroupSet::singleton(s.group(), s.g().identity());
        for (std::size_t i = 0; i < p->size(); ++i)
            if (i != *cert.j) acc = sumset(acc, p->part(i));
        stationary = acc.size() == sig.size();
    }
    c.add("|sum A_i| = |sum over i != j of A_i|", stationary);
}

}  // namespace

std::vector<Check> validate_certificate(const TheoremCertificate& cert, const TheoremInput& in) {
    const GroupPtr& g = in.group();
    require_group(g, in.X.group(), "X");
    require_group(g, in.L.group(), "L");
    require_group(g, in.Sprime.group(), "S'");
    if (cert.partition) require_group(g, cert.partition->group(), "partition");
    for (const auto* sg : {&cert.H, &cert.K, &cert.L})
        if (*sg) require_group(g, (*sg)->group(), "subgroup");
    if (cert.L && !(*cert.L == in.L)) fail(ErrorKind::ValidationInput, "certificate L differs from the input L");

    Clauses c;
    switch (cert.theorem) {
        case TheoremTag::Main: main_items(c, cert, in); break;
        case TheoremTag::LargeN: large_items(c, cert, in); break;
        case TheoremTag::Special: special_items(c, cert, in); break;
    }
    return c.take();
}

}  // namespace subsum
