#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "subsum/group_set.hpp"
#include "subsum/subgroup.hpp"

namespace subsum {

// Raw mask helpers for hot loops. Callers guarantee the masks belong to g.
Mask stabilizer_mask(const Group& g, const Mask& a);
Mask sumset_masks(const Group& g, std::span<const Mask> sets);

GroupSet sumset(const GroupSet& a, const GroupSet& b);
// Left fold of pairwise sumsets. Throws EmptyOperand on an empty list or
// an empty member.
GroupSet sumset(std::span<const GroupSet> sets);

// H(A) = {g : g + A = A}.
Subgroup stabilizer(const GroupSet& a);
bool is_periodic(const GroupSet& a);
// H is contained in H(A).
bool is_periodic(const GroupSet& a, const Subgroup& h);

// r_{A+B}(x)
std::size_t representation_count(const GroupSet& a, const GroupSet& b, Element x);
GroupSet unique_expression_elements(const GroupSet& a, const GroupSet& b);

// |sum A_i| - (sum |phi_H(A_i)| - n + 1)|H| with H the stabilizer of the sum.
std::int64_t kneser_deficiency(std::span<const GroupSet> sets);

// True iff |A+B| < |A|+|B|-1. When true, A + (B \ {x}) = A + B is verified for
// every x in B and a violation raises InternalSoundness.
bool pullout_check(const GroupSet& a, const GroupSet& b);

struct QuasiPeriodicDecomposition {
    Subgroup subgroup;
    GroupSet periodic_part;
    GroupSet remainder;
    bool reduced = false;
};

// Some A0 in A leaves A \ A0 nonempty and periodic with A0 inside one coset
// of H(A \ A0). Periodic sets count (A0 empty).
bool is_quasi_periodic(const GroupSet& a);

// Periodic A gives (H(A), A, {}); a set that is not quasi-periodic gives
// (trivial, {}, A). Otherwise the reduced decomposition minimizing
// (|remainder|, remainder mask, subgroup mask).
QuasiPeriodicDecomposition reduced_quasi_periodic_decomposition(const GroupSet& a);

// The y0 in Y with Y \ {y0} H-periodic or empty, if any. Requires |H| >= 3.
std::optional<Element> punctured_coset_check(const GroupSet& y, const Subgroup& h);

// Evaluates |(A u {x}) + B| >= |(A u {x}) + H| + |B + H| - |H|. Requires
// H(A+B) = H(B) = H, otherwise HypothesisNotMet.
bool kt_extension_bound_check(const GroupSet& a, const GroupSet& b, Element x);

}  // namespace subsum
