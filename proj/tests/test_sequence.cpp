#include "support.hpp"

#include "subsum/oracle.hpp"
#include "subsum/set_algebra.hpp"
#include "subsum/text.hpp"

using namespace subsum;
using namespace subsum::test;

TEST_CASE("basic statistics") {
    auto z4 = make_group({4});
    const auto s = seq(z4, {0, 0, 1, 1});
    CHECK(s.length() == 4);
    CHECK(s.max_multiplicity() == 2);
    CHECK(s.support() == set(z4, {0, 1}));
    CHECK(s.total_sum() == el(2));

    const GSequence empty(z4);
    CHECK(empty.length() == 0);
    CHECK(empty.total_sum() == z4->identity());

    const auto five = GSequence(z4, {0, 0, 5, 0});
    CHECK(five.max_multiplicity() == 5);
    CHECK(five.support() == set(z4, {2}));
}

TEST_CASE("restrict and remove") {
    auto z4 = make_group({4});
    const auto s = seq(z4, {0, 0, 1, 1});
    CHECK(s.restrict(set(z4, {1})) == seq(z4, {1, 1}));
    CHECK(s.remove(s).empty());
    CHECK(s.restrict(GroupSet(z4)).empty());
    CHECK(s.remove(seq(z4, {0, 1})) == seq(z4, {0, 1}));
    CHECK(thrown_kind([&] { s.remove(seq(z4, {2})); }) == ErrorKind::NotSubsequence);
    CHECK(seq(z4, {0, 1}).divides(s));
    CHECK_FALSE(seq(z4, {1, 1, 1}).divides(s));
}

TEST_CASE("subsum_set examples") {
    auto z4 = make_group({4});
    const auto s = seq(z4, {0, 0, 1, 1});
    CHECK(subsum_set(s, 2) == set(z4, {0, 1, 2}));
    CHECK(subsum_set(s, 0) == set(z4, {0}));
    CHECK(subsum_set(s, 4) == GroupSet::singleton(z4, s.total_sum()));
    CHECK(thrown_kind([&] { subsum_set(s, 5); }) == ErrorKind::Range);

    auto v4 = make_group({2, 2});
    CHECK(subsum_set(seq(v4, {0, 1, 2, 3}), 2) == set(v4, {1, 2, 3}));
}

TEST_CASE("subsum_set agrees with the enumeration oracle") {
    std::mt19937_64 rng(1);
    for (const auto& g : small_groups())
        for (std::size_t len = 0; len <= 10; ++len)
            for (int rep = 0; rep < 30; ++rep) {
                const auto s = random_sequence(g, len, rng);
                for (std::size_t n = 0; n <= len; ++n) REQUIRE(subsum_set(s, n) == oracle_subsums(s, n));
            }
}

TEST_CASE("translation covariance and complement duality") {
    std::mt19937_64 rng(2);
    for (const auto& g : small_groups())
        for (int rep = 0; rep < 60; ++rep) {
            const auto s = random_sequence(g, 1 + rng() % 8, rng);
            for (std::size_t n = 0; n <= s.length(); ++n) {
                const auto sig = subsum_set(s, n);
                CHECK_FALSE(sig.empty());
                for (std::uint32_t t = 0; t < g->order(); ++t) {
                    const auto shift = g->scalar_mul(static_cast<std::int64_t>(n), el(t));
                    CHECK(subsum_set(s.translate(el(t)), n) == sig.translate(shift));
                }
                const auto rest = subsum_set(s, s.length() - n).negated().translate(s.total_sum());
                CHECK(sig == rest);
                CHECK(sig.subset_of(subsum_set(s.with(el(rng() % g->order())), n)));
            }
        }
}

TEST_CASE("max_bounded_subsequence examples") {
    auto z4 = make_group({4});
    const auto trivial = Subgroup::trivial(z4);
    CHECK(max_bounded_subsequence(GSequence(z4, {5, 1, 0, 0}), 2, trivial) == seq(z4, {0, 0, 1}));
    CHECK(max_bounded_subsequence(seq(z4, {0, 1, 2}), 2, trivial) == seq(z4, {0, 1, 2}));
    const auto l = Subgroup::from_set(set(z4, {0, 2}));
    const auto capped = max_bounded_subsequence(seq(z4, {0, 2, 2, 1}), 2, l);
    CHECK(capped.length() == 3);
    CHECK(capped == seq(z4, {0, 1, 2}));
}

TEST_CASE("max_bounded_subsequence is maximal") {
    std::mt19937_64 rng(3);
    for (const auto& g : small_groups()) {
        if (g->order() > 8) continue;
        for (const auto& l : enumerate_subgroups(g)) {
            QuotientMap q(g, l);
            for (int rep = 0; rep < 20; ++rep) {
                const auto s = random_sequence(g, 1 + rng() % 7, rng);
                for (std::size_t n = 1; n <= 3; ++n) {
                    const auto capped = max_bounded_subsequence(s, n, l);
                    REQUIRE(capped.divides(s));
                    CHECK(push(q, capped).max_multiplicity() <= n);
                    // No longer subsequence respects the cap.
                    bool longer = false;
                    for_each_subsequence(s, capped.length() + 1, [&](const GSequence& t) {
                        longer = longer || push(q, t).max_multiplicity() <= n;
                    });
                    CHECK_FALSE(longer);
                }
            }
        }
    }
}

TEST_CASE("subsum Kneser bound") {
    auto z4 = make_group({4});
    CHECK(subsum_kneser_bound_check(seq(z4, {0, 0, 1, 1}), 2));
    auto v4 = make_group({2, 2});
    CHECK(subsum_kneser_bound_check(seq(v4, {0, 1, 2, 3}), 2));
    CHECK(subsum_kneser_bound_check(GSequence(z4, {0, 6, 0, 0}), 3));
    CHECK(thrown_kind([&] { subsum_kneser_bound_check(seq(z4, {0}), 2); }) == ErrorKind::Range);
    std::mt19937_64 rng(4);
    for (const auto& g : small_groups())
        for (int rep = 0; rep < 200; ++rep) {
            const auto s = random_sequence(g, 1 + rng() % 10, rng);
            CHECK(subsum_kneser_bound_check(s, 1 + rng() % s.length()));
        }
}

TEST_CASE("sequence text round trip") {
    auto g = make_group({2, 4});
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 100; ++rep) {
        const auto s = random_sequence(g, rng() % 7, rng);
        CHECK(parse_sequence(g, s.to_string()) == s);
    }
    auto z4 = make_group({4});
    CHECK(parse_sequence(z4, "(0)^[2]*(1)") == seq(z4, {0, 0, 1}));
    CHECK(seq(z4, {0, 0, 1}).to_string() == "(0)^[2]\xC2\xB7(1)");
    CHECK(parse_sequence(z4, "[]").empty());
    CHECK(thrown_kind([&] { parse_sequence(z4, "(0)^[0]"); }) == ErrorKind::Parse);
    CHECK(thrown_kind([&] { parse_sequence(z4, "(0,1)"); }) == ErrorKind::Parse);
    CHECK(parse_group("2,4")->order() == 8);
    CHECK(thrown_kind([] { parse_group("2,x"); }) == ErrorKind::Parse);
    CHECK(parse_set(z4, "{(3),(1)}") == set(z4, {1, 3}));
    CHECK(parse_element(z4, "(7)") == el(3));
}
