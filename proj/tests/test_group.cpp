#include "support.hpp"

#include <cstdlib>
#include <string>

using namespace subsum;
using namespace subsum::test;

TEST_CASE("make_group validates factor orders") {
    CHECK(make_group({4})->order() == 4);
    CHECK(make_group({2, 2})->order() == 4);
    CHECK(make_group({1})->order() == 1);
    CHECK(thrown_kind([] { make_group({}); }) == ErrorKind::InvalidSpec);
    CHECK(thrown_kind([] { make_group({3, 0}); }) == ErrorKind::InvalidSpec);
    CHECK(thrown_kind([] { make_group({5, 13}); }) == ErrorKind::Capacity);
    CHECK(make_group({5, 13}, 128)->order() == 65);
}

// ctest also runs this case with SUBSUM_CAPACITY=100.
TEST_CASE("capacity follows SUBSUM_CAPACITY") {
    const char* env = std::getenv("SUBSUM_CAPACITY");
    if (env && std::string(env) == "100") {
        CHECK(group_capacity() == 100);
        CHECK(make_group({5, 13})->order() == 65);
    } else if (!env) {
        CHECK(group_capacity() == 64);
    }
}

TEST_CASE("mixed-radix indexing, first factor fastest") {
    auto g = make_group({2, 4});
    const std::int64_t r[] = {1, 2};
    CHECK(g->from_residues(r).index == 5);
    CHECK(g->format_element(el(5)) == "(1,2)");
    CHECK(g->residues(el(7)) == std::vector<std::uint32_t>{1, 3});
    const std::int64_t wrap[] = {-1, 9};
    CHECK(g->from_residues(wrap).index == 3);
    CHECK(g->spec_string() == "2,4");
}

TEST_CASE("arithmetic") {
    auto z4 = make_group({4});
    CHECK(z4->add(el(3), el(2)) == el(1));
    CHECK(z4->neg(el(1)) == el(3));
    CHECK(z4->scalar_mul(-3, el(1)) == el(1));
    auto v4 = make_group({2, 2});
    CHECK(v4->add(el(1), el(2)) == el(3));
    for (std::uint32_t a = 0; a < 4; ++a) CHECK(v4->scalar_mul(0, el(a)) == v4->identity());
    CHECK(thrown_kind([&] { z4->add(el(4), el(0)); }) == ErrorKind::GroupMismatch);
}

TEST_CASE("group axioms hold exhaustively") {
    for (const auto& g : small_groups()) {
        const auto n = static_cast<std::uint32_t>(g->order());
        for (std::uint32_t a = 0; a < n; ++a) {
            CHECK(g->add(el(a), g->neg(el(a))) == g->identity());
            for (std::uint32_t b = 0; b < n; ++b) {
                CHECK(g->add(el(a), el(b)) == g->add(el(b), el(a)));
                for (std::uint32_t c = 0; c < n; ++c)
                    CHECK(g->add(g->add(el(a), el(b)), el(c)) == g->add(el(a), g->add(el(b), el(c))));
            }
            CHECK(g->scalar_mul(static_cast<std::int64_t>(g->element_order(el(a))), el(a)) == g->identity());
        }
    }
}

namespace {

// Every subset that contains 0 and is closed under addition.
std::vector<Mask> brute_subgroups(const GroupPtr& g) {
    std::vector<Mask> out;
    const std::size_t n = g->order();
    for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
        Mask m;
        for (std::size_t i = 0; i < n; ++i)
            if (bits >> i & 1U) m.set(i);
        if (m.test(0) && g->sumset(m, m) == m) out.push_back(m);
    }
    return out;
}

}  // namespace

TEST_CASE("enumerate_subgroups") {
    CHECK(enumerate_subgroups(make_group({4})).size() == 3);
    CHECK(enumerate_subgroups(make_group({2, 2})).size() == 5);
    CHECK(enumerate_subgroups(make_group({1})).size() == 1);

    for (auto spec : std::vector<std::vector<std::uint32_t>>{{6}, {8}, {2, 4}, {2, 2, 2}, {12}, {4, 4}, {2, 2, 4}}) {
        auto g = make_group(spec);
        const auto subs = enumerate_subgroups(g);
        auto brute = brute_subgroups(g);
        REQUIRE(subs.size() == brute.size());
        for (std::size_t i = 0; i + 1 < subs.size(); ++i) {
            const bool ordered = subs[i].order() < subs[i + 1].order() ||
                                 (subs[i].order() == subs[i + 1].order() && subs[i].mask() < subs[i + 1].mask());
            CHECK(ordered);
        }
        for (const auto& h : subs) {
            CHECK(std::find(brute.begin(), brute.end(), h.mask()) != brute.end());
            CHECK(g->order() % h.order() == 0);
            CHECK(Subgroup::generated_by(g, h.generators()) == h);
        }
    }
}

TEST_CASE("Subgroup construction") {
    auto z4 = make_group({4});
    CHECK(Subgroup::from_set(set(z4, {0, 2})).order() == 2);
    CHECK(thrown_kind([&] { Subgroup::from_set(set(z4, {0, 1})); }) == ErrorKind::InvalidSubgroup);
    const Element gen[] = {el(2)};
    CHECK(Subgroup::generated_by(z4, gen).members() == set(z4, {0, 2}));
    CHECK(Subgroup::trivial(z4).is_trivial());
    CHECK(Subgroup::whole(z4).is_whole());
}

TEST_CASE("quotient maps") {
    auto z4 = make_group({4});
    QuotientMap q(z4, Subgroup::from_set(set(z4, {0, 2})));
    CHECK(q.image()->order() == 2);
    CHECK(q(el(1)) == q(el(3)));
    CHECK(q(el(0)) == q(el(2)));
    CHECK(q(el(0)) != q(el(1)));

    QuotientMap whole(z4, Subgroup::whole(z4));
    CHECK(whole.image()->order() == 1);
    QuotientMap none(z4, Subgroup::trivial(z4));
    CHECK(none.image()->order() == 4);
    CHECK(none.push(set(z4, {1, 2})).size() == 2);

    CHECK(q.preimage(q.push(set(z4, {1}))) == set(z4, {1, 3}));
    CHECK(q(q.lift(q(el(3)))) == q(el(3)));
}

TEST_CASE("quotient maps are homomorphisms") {
    for (const auto& g : small_groups())
        for (const auto& h : enumerate_subgroups(g)) {
            QuotientMap q(g, h);
            CHECK(q.image()->order() * h.order() == g->order());
            const auto n = static_cast<std::uint32_t>(g->order());
            for (std::uint32_t a = 0; a < n; ++a)
                for (std::uint32_t b = 0; b < n; ++b) {
                    CHECK(q(g->add(el(a), el(b))) == q.image()->add(q(el(a)), q(el(b))));
                    CHECK((q(el(a)) == q(el(b))) == h.contains(g->sub(el(a), el(b))));
                }
        }
}

TEST_CASE("quotient_is_klein") {
    auto v4 = make_group({2, 2});
    auto z4 = make_group({4});
    auto z2z4 = make_group({2, 4});
    CHECK(quotient_is_klein(Subgroup::whole(v4), Subgroup::trivial(v4)));
    CHECK_FALSE(quotient_is_klein(Subgroup::whole(z4), Subgroup::trivial(z4)));
    // (Z/2 x Z/4) / <(0,2)> is Klein.
    const Element gen[] = {el(4)};
    CHECK(quotient_is_klein(Subgroup::whole(z2z4), Subgroup::generated_by(z2z4, gen)));
}
