#include "support.hpp"

#include "subsum/set_algebra.hpp"

using namespace subsum;
using namespace subsum::test;

namespace {

GroupSet brute_sum(const GroupSet& a, const GroupSet& b) {
    GroupSet out(a.group());
    for (auto x : a.elements())
        for (auto y : b.elements()) out = out.with(a.g().add(x, y));
    return out;
}

GroupSet brute_stabilizer(const GroupSet& a) {
    GroupSet out(a.group());
    for (std::uint32_t t = 0; t < a.g().order(); ++t)
        if (a.translate(el(t)) == a) out = out.with(el(t));
    return out;
}

std::vector<GroupSet> all_nonempty(const GroupPtr& g) {
    std::vector<GroupSet> out;
    for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << g->order()); ++bits) {
        Mask m;
        for (std::size_t i = 0; i < g->order(); ++i)
            if (bits >> i & 1U) m.set(i);
        out.emplace_back(g, m);
    }
    return out;
}

}  // namespace

TEST_CASE("sumset examples") {
    auto z4 = make_group({4});
    CHECK(sumset(set(z4, {0, 1}), set(z4, {0, 1})) == set(z4, {0, 1, 2}));
    CHECK(sumset(set(z4, {1, 3}), set(z4, {0})) == set(z4, {1, 3}));
    CHECK(sumset(set(z4, {0, 2}), set(z4, {1, 3})) == set(z4, {1, 3}));
    CHECK(thrown_kind([&] { sumset(set(z4, {0}), GroupSet(z4)); }) == ErrorKind::EmptyOperand);
    CHECK(thrown_kind([&] { sumset(set(z4, {0}), set(make_group({2, 2}), {0})); }) == ErrorKind::GroupMismatch);
    const std::vector<GroupSet> three{set(z4, {0, 1}), set(z4, {0, 1}), set(z4, {0, 1})};
    CHECK(sumset(three) == GroupSet::full(z4));
}

TEST_CASE("stabilizer and periodicity examples") {
    auto z4 = make_group({4});
    CHECK(stabilizer(set(z4, {1, 3})).members() == set(z4, {0, 2}));
    CHECK(stabilizer(set(z4, {0, 1})).is_trivial());
    CHECK(stabilizer(GroupSet::full(z4)).is_whole());
    CHECK(is_periodic(set(z4, {1, 3})));
    CHECK_FALSE(is_periodic(set(z4, {0, 1, 2})));
    CHECK_FALSE(is_periodic(set(z4, {3})));
    CHECK(is_periodic(set(z4, {1, 3}), Subgroup::from_set(set(z4, {0, 2}))));
    CHECK(thrown_kind([&] { stabilizer(GroupSet(z4)); }) == ErrorKind::EmptyOperand);
}

TEST_CASE("representation counts") {
    auto z4 = make_group({4});
    CHECK(representation_count(set(z4, {0, 1}), set(z4, {0, 1}), el(1)) == 2);
    CHECK(representation_count(set(z4, {0, 1}), set(z4, {0, 1}), el(3)) == 0);
    CHECK(unique_expression_elements(set(z4, {0, 1}), set(z4, {0, 1})) == set(z4, {0, 2}));
}

TEST_CASE("sumset and stabilizer agree with brute force") {
    for (const auto& g : small_groups()) {
        if (g->order() > 8) continue;
        const auto sets = all_nonempty(g);
        for (const auto& a : sets) {
            const auto h = stabilizer(a);
            REQUIRE(h.members() == brute_stabilizer(a));
            CHECK(sumset(a, h.members()) == a);
            CHECK(is_periodic(a) == !h.is_trivial());
            for (const auto& b : sets) {
                const auto ab = sumset(a, b);
                REQUIRE(ab == brute_sum(a, b));
                CHECK(ab == sumset(b, a));
                CHECK(ab.size() >= std::max(a.size(), b.size()));
                CHECK(h.subgroup_of(stabilizer(ab)));
            }
        }
    }
}

TEST_CASE("sumset properties on order 16") {
    std::mt19937_64 rng(16);
    for (auto spec : std::vector<std::vector<std::uint32_t>>{{16}, {4, 4}, {2, 8}, {2, 2, 2, 2}}) {
        auto g = make_group(spec);
        for (int i = 0; i < 400; ++i) {
            const auto a = random_set(g, rng), b = random_set(g, rng), c = random_set(g, rng);
            CHECK(sumset(a, b) == brute_sum(a, b));
            CHECK(sumset(sumset(a, b), c) == sumset(a, sumset(b, c)));
            CHECK(stabilizer(a).members() == brute_stabilizer(a));
            CHECK(stabilizer(a).subgroup_of(stabilizer(sumset(a, b))));
        }
    }
}

TEST_CASE("kneser_deficiency") {
    auto z4 = make_group({4});
    const std::vector<GroupSet> pair{set(z4, {0, 1}), set(z4, {0, 1})};
    CHECK(kneser_deficiency(pair) == 0);
    const std::vector<GroupSet> singles{set(z4, {1}), set(z4, {3}), set(z4, {2})};
    CHECK(kneser_deficiency(singles) == 0);
    // {(0,0),(1,0)} + {(0,0),(0,1)} is all of Z/2 x Z/2, so H = G and the bound is |G|.
    auto v4 = make_group({2, 2});
    const std::vector<GroupSet> klein{set(v4, {0, 1}), set(v4, {0, 2})};
    CHECK(kneser_deficiency(klein) == 0);
    const std::vector<GroupSet> with_empty{set(z4, {0}), GroupSet(z4)};
    CHECK(thrown_kind([&] { kneser_deficiency(with_empty); }) == ErrorKind::EmptyOperand);
}

TEST_CASE("pullout_check") {
    auto z4 = make_group({4});
    CHECK(pullout_check(set(z4, {1, 3}), set(z4, {0, 2})));
    CHECK(sumset(set(z4, {1, 3}), set(z4, {0})) == sumset(set(z4, {1, 3}), set(z4, {0, 2})));
    CHECK(sumset(set(z4, {1, 3}), set(z4, {2})) == sumset(set(z4, {1, 3}), set(z4, {0, 2})));
    CHECK_FALSE(pullout_check(set(z4, {0, 1}), set(z4, {0, 1})));
    for (const auto& a : all_nonempty(z4)) CHECK_FALSE(pullout_check(a, set(z4, {2})));
}

TEST_CASE("reduced quasi-periodic decomposition examples") {
    auto z4 = make_group({4});
    const auto d = reduced_quasi_periodic_decomposition(set(z4, {0, 1, 2}));
    CHECK(d.subgroup.members() == set(z4, {0, 2}));
    CHECK(d.periodic_part == set(z4, {0, 2}));
    CHECK(d.remainder == set(z4, {1}));
    CHECK(d.reduced);

    const auto e = reduced_quasi_periodic_decomposition(set(z4, {0, 1}));
    CHECK(e.subgroup.is_trivial());
    CHECK(e.periodic_part.empty());
    CHECK(e.remainder == set(z4, {0, 1}));
    CHECK_FALSE(is_quasi_periodic(set(z4, {0, 1})));

    const auto f = reduced_quasi_periodic_decomposition(set(z4, {1, 3}));
    CHECK(f.periodic_part == set(z4, {1, 3}));
    CHECK(f.remainder.empty());
}

TEST_CASE("decompositions reassemble and are reduced") {
    for (const auto& g : small_groups()) {
        if (g->order() > 8) continue;
        for (const auto& a : all_nonempty(g)) {
            const auto d = reduced_quasi_periodic_decomposition(a);
            CHECK((d.periodic_part | d.remainder) == a);
            CHECK_FALSE(d.periodic_part.intersects(d.remainder));
            if (!d.periodic_part.empty()) CHECK(is_periodic(d.periodic_part, d.subgroup));
            if (d.periodic_part.empty()) {
                CHECK((d.remainder == a) == !is_periodic(a));
                CHECK(is_quasi_periodic(a) == is_periodic(a));
            } else if (!d.remainder.empty()) {
                const auto base = d.remainder.min_element();
                for (auto r : d.remainder.elements()) CHECK(d.subgroup.contains(g->sub(r, base)));
                CHECK_FALSE(is_quasi_periodic(d.remainder));
            }
        }
    }
}

TEST_CASE("punctured_coset_check examples") {
    auto z8 = make_group({8});
    const auto h = Subgroup::from_set(set(z8, {0, 2, 4, 6}));
    CHECK(punctured_coset_check(set(z8, {0, 2, 4, 6, 1}), h) == el(1));
    CHECK_FALSE(punctured_coset_check(GroupSet::full(z8), h).has_value());
    CHECK(punctured_coset_check(set(z8, {5}), h) == el(5));
    const auto small = Subgroup::from_set(set(z8, {0, 4}));
    CHECK(thrown_kind([&] { punctured_coset_check(set(z8, {1}), small); }) == ErrorKind::Precondition);
}

// Items 1 and 3 of the punctured-coset lemma, over every shape in small groups.
TEST_CASE("punctured coset lemma properties") {
    std::size_t shapes = 0, pairs = 0;
    for (auto spec : std::vector<std::vector<std::uint32_t>>{{6}, {8}, {9}, {2, 4}, {3, 3}, {12}, {2, 6}}) {
        auto g = make_group(spec);
        const auto sets = all_nonempty(g);
        for (const auto& h : enumerate_subgroups(g)) {
            if (h.order() < 3) continue;
            for (const auto& y : sets) {
                const auto y0 = punctured_coset_check(y, h);
                if (!y0) continue;
                ++shapes;
                CHECK_FALSE(is_periodic(y));
                const auto d = reduced_quasi_periodic_decomposition(y);
                CHECK(d.remainder == GroupSet::singleton(g, *y0));
                if (g->order() > 9) continue;
                for (const auto& a : sets) {
                    if (a.size() > y.size()) continue;
                    for (const auto& b : sets) {
                        if (a.size() + b.size() != y.size() + 1 || sumset(a, b) != y) continue;
                        ++pairs;
                        bool found = false;
                        for (auto a0 : a.elements())
                            for (auto b0 : b.elements()) {
                                const auto ra = a.without(a0), rb = b.without(b0);
                                found = found || (g->add(a0, b0) == *y0 && (ra.empty() || is_periodic(ra, h)) &&
                                                  (rb.empty() || is_periodic(rb, h)));
                            }
                        CHECK(found);
                    }
                }
            }
        }
    }
    CHECK(shapes > 0);
    CHECK(pairs > 0);
    MESSAGE(shapes << " punctured shapes, " << pairs << " critical pairs");
}

TEST_CASE("kt_extension_bound_check") {
    auto z4 = make_group({4});
    CHECK(kt_extension_bound_check(set(z4, {0}), set(z4, {0, 1}), el(2)));
    CHECK(kt_extension_bound_check(set(z4, {0}), set(z4, {0, 1}), el(0)));
    // B a subgroup: equality pattern |(A u {x}) + H| + |H| - |H|.
    auto z8 = make_group({8});
    CHECK(kt_extension_bound_check(set(z8, {1}), set(z8, {0, 4}), el(2)));
    CHECK(thrown_kind([&] { kt_extension_bound_check(set(z4, {0, 2}), set(z4, {0, 1}), el(1)); }) ==
          ErrorKind::HypothesisNotMet);
}
