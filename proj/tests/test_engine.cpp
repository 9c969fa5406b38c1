#include "support.hpp"

#include <set>

#include "engine_internal.hpp"
#include "subsum/engine.hpp"
#include "subsum/oracle.hpp"
#include "subsum/set_algebra.hpp"

using namespace subsum;
using namespace subsum::test;

namespace {

SetPartition parts(const GroupPtr& g, std::initializer_list<std::initializer_list<std::uint32_t>> ps) {
    std::vector<GroupSet> v;
    for (auto p : ps) v.push_back(GroupSet::of(g, p));
    return SetPartition(g, v);
}

TheoremInput plain(const GSequence& s, std::size_t n) {
    const auto& g = s.group();
    return TheoremInput{GroupSet::singleton(g, g->identity()), Subgroup::trivial(g), s, s, n};
}

std::vector<std::string> failed(const std::vector<Check>& checks) {
    std::vector<std::string> out;
    for (const auto& c : checks)
        if (!c.pass) out.push_back(c.clause);
    return out;
}

bool has(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

std::vector<Mask> sorted_masks(std::vector<Mask> m) {
    std::sort(m.begin(), m.end());
    return m;
}

}  // namespace

TEST_CASE("search enumerator covers every partition of every admissible subsequence once") {
    std::mt19937_64 rng(21);
    for (const auto& g : small_groups())
        for (int rep = 0; rep < 25; ++rep) {
            const auto s = random_sequence(g, 1 + rng() % 7, rng);
            for (std::size_t n = 1; n <= 4; ++n)
                for (std::size_t ell = n; ell <= s.length(); ++ell) {
                    std::set<std::vector<Mask>> expected;
                    for_each_subsequence(s, ell, [&](const GSequence& t) {
                        if (t.max_multiplicity() > n) return;
                        for (const auto& p : all_setpartitions(t, n)) expected.insert(sorted_masks(p.masks()));
                    });
                    std::multiset<std::vector<Mask>> got;
                    detail::enumerate_partitions(s.counts(), ell, n, [&](const detail::Parts& p) {
                        got.insert(sorted_masks(p));
                        return false;
                    });
                    REQUIRE(got.size() == expected.size());
                    CHECK(std::set<std::vector<Mask>>(got.begin(), got.end()) == expected);
                }
        }
}

TEST_CASE("maximal_partition examples") {
    auto z4 = make_group({4});
    const auto zero = set(z4, {0});
    const auto s = seq(z4, {0, 0, 1, 1});
    const auto m = maximal_partition(zero, Subgroup::trivial(z4), s, s, 2, SearchMode::Exhaustive);
    CHECK(m.sumset_size == 3);
    CHECK(parts_sumset(m.partition, zero).size() == 3);
    CHECK_FALSE(m.heuristic);

    const auto t = seq(z4, {1, 2, 3});
    const auto forced = maximal_partition(zero, Subgroup::trivial(z4), t, t, 3, SearchMode::Exhaustive);
    CHECK(forced.sumset_size == 1);
    CHECK(parts_sumset(forced.partition, zero) == GroupSet::singleton(z4, t.total_sum()));

    auto v4 = make_group({2, 2});
    const auto all = seq(v4, {0, 1, 2, 3});
    const auto k = maximal_partition(set(v4, {0}), Subgroup::trivial(v4), all, all, 2, SearchMode::Exhaustive);
    CHECK(k.sumset_size == 3);
    CHECK(std::min(k.partition.part(0).size(), k.partition.part(1).size()) == 1);

    const auto local = maximal_partition(zero, Subgroup::trivial(z4), s, s, 2, SearchMode::LocalSearch);
    CHECK(local.heuristic);

    CHECK(thrown_kind([&] { maximal_partition(zero, Subgroup::trivial(z4), s, seq(z4, {2}), 1, EngineOptions{}); }) ==
          ErrorKind::HypothesisNotMet);
    CHECK(thrown_kind([&] {
              maximal_partition(set(z4, {0, 1}), Subgroup::from_set(set(z4, {0, 2})), s, s, 2, EngineOptions{});
          }) == ErrorKind::HypothesisNotMet);
}

TEST_CASE("maximal_partition agrees with the oracle in exhaustive mode") {
    std::mt19937_64 rng(22);
    const std::vector<GroupPtr> groups{make_group({4}), make_group({2, 2}), make_group({6}), make_group({8}),
                                       make_group({2, 4}), make_group({9}), make_group({16}), make_group({4, 4}),
                                       make_group({2, 2, 2, 2})};
    for (const auto& g : groups)
        for (int rep = 0; rep < 40; ++rep) {
            const auto s = random_sequence(g, 2 + rng() % 7, rng);
            const std::size_t n = 1 + rng() % 4;
            const auto x = rep % 3 ? GroupSet::singleton(g, g->identity()) : random_set(g, rng);
            const auto capped = max_bounded_subsequence(s, n, Subgroup::trivial(g));
            if (capped.length() < n) continue;
            const std::size_t ell = std::min<std::size_t>(capped.length(), n + rng() % 5);
            const auto sprime = max_bounded_subsequence(capped, n, Subgroup::trivial(g));
            GSequence trimmed = sprime;
            while (trimmed.length() > ell) trimmed = trimmed.remove(GSequence::of(g, {trimmed.support().elements().back().index}));
            const auto m = maximal_partition(x, Subgroup::trivial(g), s, trimmed, n, SearchMode::Exhaustive);
            const auto o = oracle_max_sumset_over(x, s, ell, n);
            REQUIRE(o);
            CHECK(m.sumset_size == o->first);
            CHECK(underlying_sequence(m.partition).divides(s));
            CHECK(underlying_sequence(m.partition).length() == ell);
        }
}

TEST_CASE("maximal_partition lifts through L") {
    auto z8 = make_group({8});
    const auto l = Subgroup::from_set(set(z8, {0, 4}));
    const auto x = set(z8, {0, 4, 1, 5});
    const auto s = seq(z8, {0, 4, 1, 2, 2, 6});
    const auto sprime = max_bounded_subsequence(s, 2, l);
    const auto m = maximal_partition(x, l, s, sprime, 2, SearchMode::Exhaustive);
    QuotientMap q(z8, l);
    for (const auto& p : m.partition.parts()) CHECK(q.push(p).size() == p.size());
    // Brute force over the same family, parts L-distinct.
    std::size_t best = 0;
    for_each_subsequence(s, sprime.length(), [&](const GSequence& t) {
        if (push(q, t).max_multiplicity() > 2) return;
        for (const auto& p : all_setpartitions(t, 2)) {
            bool distinct = true;
            for (const auto& a : p.parts()) distinct = distinct && q.push(a).size() == a.size();
            if (distinct) best = std::max(best, parts_sumset(p, x).size());
        }
    });
    CHECK(m.sumset_size == best);
}

TEST_CASE("normalize_seed") {
    auto z4 = make_group({4});
    const auto p = parts(z4, {{0, 2}, {0, 2}});
    const auto s = seq(z4, {0, 2, 0, 2});
    CHECK(normalize_seed(set(z4, {0}), s, p) == p.canonical());
    // The hypothesis fails when the sumset is already large.
    CHECK(thrown_kind([&] { normalize_seed(set(z4, {0}), seq(z4, {0, 0, 1, 1}), parts(z4, {{0, 1}, {0, 1}})); }) ==
          ErrorKind::HypothesisNotMet);

    auto v4 = make_group({2, 2});
    const auto x = GroupSet::full(v4);
    const auto q = parts(v4, {{0, 1}, {0, 2}});
    const auto out = normalize_seed(x, seq(v4, {0, 0, 1, 2, 3}), q);
    CHECK(parts_sumset(out, x) == parts_sumset(q, x));
    CHECK(underlying_sequence(out).length() == 4);
}

TEST_CASE("normalize_equalize_Z") {
    auto z4 = make_group({4});
    const auto p = parts(z4, {{0, 2}, {0, 2}});
    CHECK(normalize_equalize_Z(set(z4, {0}), p) == p.canonical());
    // {0,2}·{1,3} has Z empty and two elements of one H-coset off Z in a
    // part, so the lemma does not apply.
    CHECK(thrown_kind([&] { normalize_equalize_Z(set(z4, {0}), parts(z4, {{0, 2}, {1, 3}})); }) ==
          ErrorKind::HypothesisNotMet);
    CHECK(thrown_kind([&] { normalize_equalize_Z(set(z4, {0}), parts(z4, {{0, 1, 2}})); }) ==
          ErrorKind::HypothesisNotMet);
}

TEST_CASE("subsums_equal_sumset_check and frozen_shift_check") {
    auto z4 = make_group({4});
    const auto h = Subgroup::from_set(set(z4, {0, 2}));
    const auto p = parts(z4, {{0, 2}, {0, 2}});
    const auto s = seq(z4, {0, 2, 0, 2, 0});
    CHECK(subsums_equal_sumset_check(set(z4, {0}), s, p, h, set(z4, {0, 2})));
    CHECK(frozen_shift_check(set(z4, {0}), s, p, el(0), 3));
    CHECK(frozen_shift_check(set(z4, {0}), s, p, el(0), 2));
    CHECK(thrown_kind([&] { frozen_shift_check(set(z4, {0}), s, p, el(0), 4); }) == ErrorKind::HypothesisNotMet);
    CHECK(thrown_kind([&] { subsums_equal_sumset_check(set(z4, {0}), seq(z4, {0, 2, 0, 2, 1}), p, h, set(z4, {0, 2})); }) ==
          ErrorKind::HypothesisNotMet);
}

TEST_CASE("equalize_sizes") {
    auto v4 = make_group({2, 2});
    const auto all = seq(v4, {0, 1, 2, 3});
    const auto r = equalize_sizes(set(v4, {0}), all, parts(v4, {{0}, {1, 2, 3}}));
    REQUIRE(std::holds_alternative<ExceptionalStructure>(r));
    const auto& e = std::get<ExceptionalStructure>(r);
    CHECK(e.K.is_whole());
    CHECK(e.beta == el(0));
    const auto eq = oracle_max_sumset_over(set(v4, {0}), all, 4, 2, true);
    REQUIRE(eq);
    CHECK(eq->first == 2);

    auto z4 = make_group({4});
    const auto p = parts(z4, {{0, 1}, {0, 1}});
    const auto fixed = equalize_sizes(set(z4, {0}), seq(z4, {0, 0, 1, 1}), p);
    REQUIRE(std::holds_alternative<SetPartition>(fixed));
    CHECK(is_equitable(std::get<SetPartition>(fixed)));

    const auto s = seq(z4, {1, 0, 1, 2});
    const auto out = equalize_sizes(set(z4, {0}), s, parts(z4, {{1}, {0, 1, 2}}));
    REQUIRE(std::holds_alternative<SetPartition>(out));
    const auto& b = std::get<SetPartition>(out);
    CHECK(is_equitable(b));
    CHECK(parts_sumset(b, set(z4, {0})).size() >= 3);
    CHECK(underlying_sequence(b) == s);
}

TEST_CASE("main theorem examples") {
    auto v4 = make_group({2, 2});
    const auto c3 = main_partition_certificate(plain(seq(v4, {0, 1, 2, 3}), 2));
    CHECK(c3.item == 3);
    REQUIRE(c3.K);
    CHECK(c3.K->is_whole());
    CHECK(c3.beta == el(0));
    CHECK(c3.all_pass());

    auto z4 = make_group({4});
    const auto c1 = main_partition_certificate(plain(seq(z4, {0, 0, 1, 1}), 2));
    CHECK(c1.item == 1);
    CHECK(c1.partition->canonical().to_string() == "{(0),(1)}\xC2\xB7{(0),(1)}");
    CHECK(c1.max_sumset == 3);

    const auto c2 = main_partition_certificate(plain(seq(z4, {0, 2, 0, 2}), 2));
    CHECK(c2.item == 2);
    CHECK(c2.H->members() == set(z4, {0, 2}));
    CHECK(*c2.Z == set(z4, {0, 2}));
    CHECK(is_equitable(*c2.partition));
    CHECK(parts_sumset(*c2.partition, set(z4, {0})) == subsum_set(seq(z4, {0, 2, 0, 2}), 2));

    CHECK(thrown_kind([&] { main_partition_certificate(plain(seq(z4, {0, 0, 0}), 2)); }) ==
          ErrorKind::HypothesisNotMet);
}

TEST_CASE("main theorem with nontrivial L") {
    auto z8 = make_group({8});
    const auto l = Subgroup::from_set(set(z8, {0, 4}));
    std::mt19937_64 rng(23);
    int certified = 0;
    for (int rep = 0; rep < 200; ++rep) {
        const auto s = random_sequence(z8, 2 + rng() % 6, rng);
        const auto x = sumset(random_set(z8, rng), l.members());
        for (std::size_t n = 1; n <= 3; ++n) {
            const auto sprime = max_bounded_subsequence(s, n, l);
            if (sprime.length() < n) continue;
            const auto cert = main_partition_certificate(TheoremInput{x, l, s, sprime, n});
            CHECK(cert.all_pass());
            ++certified;
        }
    }
    CHECK(certified > 0);
}

TEST_CASE("large-n theorem examples") {
    auto v4 = make_group({2, 2});
    const auto c1 = large_n_certificate(plain(seq(v4, {0, 1, 2, 3}), 2));
    CHECK(c1.item == 1);
    CHECK(c1.K->is_whole());

    auto z4 = make_group({4});
    const auto c2 = large_n_certificate(plain(seq(z4, {0, 0, 1, 1}), 2));
    CHECK(c2.item == 2);

    const auto c3 = large_n_certificate(plain(seq(z4, {0, 2, 0, 2}), 2));
    CHECK(c3.item == 3);
    CHECK(c3.H->members() == set(z4, {0, 2}));
    CHECK(c3.K->members() == set(z4, {0, 2}));
    CHECK(c3.alpha == el(0));
    CHECK(c3.index_set == std::vector<std::size_t>{0, 1});

    CHECK(thrown_kind([&] { large_n_certificate(plain(seq(z4, {0, 1, 2, 3, 0}), 2)); }) ==
          ErrorKind::HypothesisNotMet);
}

// Z/4, X = {0,1,2}, S = S' = 0^2 1^2, n = 2: the sumset case hypothesis
// |X + Sigma_2(S)| = 4 < |S'| - n + |X| = 5 holds, yet no item can be met.
TEST_CASE("large-n statement fails for X = {0,1,2} in Z/4") {
    auto z4 = make_group({4});
    const auto x = set(z4, {0, 1, 2});
    const auto s = seq(z4, {0, 0, 1, 1});
    const TheoremInput in{x, Subgroup::trivial(z4), s, s, 2};
    CHECK(thrown_kind([&] { large_n_certificate(in); }) == ErrorKind::InternalSoundness);

    const auto sig = sumset(x, subsum_set(s, 2));
    const auto h = stabilizer(sig);
    CHECK(sig.size() == 4);
    // Item 1: |supp(S)| must equal |S|.
    CHECK(s.support().size() != s.length());
    bool item2 = false, item3 = false;
    for (const auto& p : all_setpartitions(s, 2)) {
        if (!is_equitable(p)) continue;
        const auto sum = parts_sumset(p, x);
        item2 = item2 || sum.size() >= 5;
        for (const auto& k : enumerate_subgroups(z4)) {
            if (k.is_trivial() || !k.subgroup_of(h)) continue;
            for (std::uint32_t a = 0; a < 4; ++a) {
                const auto coset = k.coset(el(a));
                GroupSet meet = GroupSet::full(z4), inside(z4);
                std::size_t count = 0;
                bool ok = sum == sig;
                for (const auto& part : p.parts()) {
                    meet &= sumset(part, k.members());
                    ok = ok && (part - coset).size() <= 1;
                    if (part.subset_of(coset)) {
                        inside = count ? sumset(inside, part) : part;
                        ++count;
                    }
                }
                ok = ok && meet == coset && count > 0;
                ok = ok && inside == k.coset(z4->scalar_mul(static_cast<std::int64_t>(count), el(a)));
                item3 = item3 || ok;
            }
        }
    }
    CHECK_FALSE(item2);
    CHECK_FALSE(item3);
}

TEST_CASE("special structure examples") {
    auto v4 = make_group({2, 2});
    const auto c1 = special_structure_certificate(seq(v4, {0, 1, 2, 3}), 2);
    CHECK(c1.item == 1);
    CHECK(c1.K->is_whole());
    CHECK(c1.m == 2);

    auto z4 = make_group({4});
    const auto c3 = special_structure_certificate(GSequence(z4, {0, 5, 0, 0}), 2);
    CHECK(c3.item == 3);

    const auto c5 = special_structure_certificate(seq(z4, {0, 2, 0, 2}), 2);
    CHECK(c5.item == 5);
    CHECK(c5.H->members() == set(z4, {0, 2}));
    CHECK(c5.x == el(0));
    CHECK(c5.partition->canonical().to_string() == "{(0),(2)}\xC2\xB7{(0),(2)}");

    CHECK(special_m(seq(z4, {0, 2, 0, 2}), 2) == 2);
    CHECK_FALSE(special_hypothesis_holds(seq(z4, {0, 1, 2, 3}), 2));
    CHECK(thrown_kind([&] { special_structure_certificate(seq(z4, {0, 1, 2, 3}), 2); }) ==
          ErrorKind::HypothesisNotMet);
    CHECK(thrown_kind([&] { special_structure_certificate(seq(z4, {0, 1}), 2); }) == ErrorKind::HypothesisNotMet);
}

TEST_CASE("validator rejects tampered certificates") {
    auto z8 = make_group({8});
    const auto s = seq(z8, {0, 1, 2, 3});
    const auto in = plain(s, 2);
    auto cert = main_partition_certificate(in);
    REQUIRE(cert.partition);
    cert.partition = parts(z8, {{0}, {1, 2, 3}});
    const auto bad = failed(validate_certificate(cert, in));
    CHECK(has(bad, "equitable"));

    auto g = make_group({2, 4});
    const auto t = seq(g, {0, 4, 1, 5});
    const auto tin = plain(t, 2);
    auto c3 = main_partition_certificate(tin);
    REQUIRE(c3.item == 3);
    c3.K = Subgroup::from_set(set(g, {0, 2, 4, 6}));
    CHECK(has(failed(validate_certificate(c3, tin)), "K/L is Klein four"));

    const auto other = plain(seq(make_group({2, 2}), {0, 1, 2, 3}), 2);
    CHECK(thrown_kind([&] { validate_certificate(cert, other); }) == ErrorKind::ValidationInput);
}

// Small-sum hypotheses: sum |A_i| <= 2n, |A_i \ Z| <= 1 and the
// strict bound force Z = alpha + H with H nontrivial.
TEST_CASE("Z is a single coset under the small-sum hypotheses") {
    std::mt19937_64 rng(24);
    std::size_t tested = 0;
    for (const auto& g : small_groups()) {
        if (g->order() < 2) continue;
        for (int rep = 0; rep < 600; ++rep) {
            const std::size_t n = 1 + rng() % 4;
            std::vector<GroupSet> ps;
            for (std::size_t i = 0; i < n; ++i) {
                GroupSet a(g);
                const std::size_t size = 1 + rng() % 2;
                while (a.size() < size) a = a.with(el(static_cast<std::uint32_t>(rng() % g->order())));
                ps.push_back(a);
            }
            const SetPartition p(g, ps);
            const auto x = rep % 2 ? GroupSet::singleton(g, g->identity()) : random_set(g, rng);
            const auto sum = parts_sumset(p, x);
            const auto h = stabilizer(sum);
            const auto z = coset_intersection_Z(p, h);
            bool shape = true;
            for (const auto& a : ps) shape = shape && (a - z).size() <= 1;
            const std::size_t bound = sumset(x, h.members()).size() + (p.weight() - n) * h.order();
            if (!shape || sum.size() >= bound) continue;
            ++tested;
            CHECK_FALSE(h.is_trivial());
            REQUIRE_FALSE(z.empty());
            CHECK(z == h.coset(z.min_element()));
        }
    }
    CHECK(tested > 0);
}

TEST_CASE("item 3 with L nontrivial in order 8") {
    auto g = make_group({2, 2, 2});
    // Indices: (0,0,0)=0, (1,0,0)=1, (1,1,0)=3, (0,0,1)=4, (1,0,1)=5.
    const auto l = Subgroup::from_set(set(g, {0, 3}));
    const auto s = seq(g, {0, 4, 1, 5});
    const auto cert = main_partition_certificate(TheoremInput{set(g, {0, 3}), l, s, s, 2});
    CHECK(cert.item == 3);
    REQUIRE(cert.K);
    CHECK(cert.K->order() == 8);
    CHECK(quotient_is_klein(*cert.K, l));
    CHECK(cert.all_pass());
}
