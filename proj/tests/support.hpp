#pragma once

#include <optional>
#include <random>

#include <doctest.h>

#include "subsum/error.hpp"
#include "subsum/group.hpp"
#include "subsum/group_set.hpp"
#include "subsum/sequence.hpp"
#include "subsum/subgroup.hpp"

namespace subsum::test {

inline GroupSet set(const GroupPtr& g, std::initializer_list<std::uint32_t> idx) { return GroupSet::of(g, idx); }
inline GSequence seq(const GroupPtr& g, std::initializer_list<std::uint32_t> idx) { return GSequence::of(g, idx); }
inline Element el(std::uint32_t i) { return Element{i}; }

// The groups most suites sweep.
inline std::vector<GroupPtr> small_groups() {
    return {make_group({1}), make_group({2}), make_group({3}), make_group({4}), make_group({2, 2}),
            make_group({5}), make_group({6}), make_group({8}), make_group({2, 4}), make_group({2, 2, 2})};
}

inline GroupSet random_set(const GroupPtr& g, std::mt19937_64& rng, bool nonempty = true) {
    for (;;) {
        Mask m;
        for (std::size_t i = 0; i < g->order(); ++i)
            if (rng() & 1U) m.set(i);
        if (!nonempty || m.any()) return GroupSet(g, m);
    }
}

inline GSequence random_sequence(const GroupPtr& g, std::size_t len, std::mt19937_64& rng) {
    std::vector<std::uint32_t> counts(g->order(), 0);
    for (std::size_t i = 0; i < len; ++i) ++counts[rng() % g->order()];
    return GSequence(g, counts);
}

// The kind of Error f throws, if any.
template <class F>
std::optional<ErrorKind> thrown_kind(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

}  // namespace subsum::test
