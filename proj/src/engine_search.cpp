#include <algorithm>
#include <numeric>

#include "engine_internal.hpp"
#include "subsum/set_algebra.hpp"

namespace subsum::detail {

Mask parts_sum(const Group& g, const Mask& x, const Parts& parts) {
    Mask acc = x;
    for (const auto& m : parts) acc = g.sumset(acc, m);
    return acc;
}

Counts parts_counts(const Group& g, const Parts& parts) {
    Counts c(g.order(), 0);
    for (const auto& m : parts) m.for_each([&](std::size_t i) { ++c[i]; });
    return c;
}

Mask coset_z(const Group& g, const Parts& parts, const Mask& h) {
    Mask z = g.full_mask();
    for (const auto& m : parts) z &= g.sumset(m, h);
    return z;
}

std::size_t total(const Counts& c) { return std::accumulate(c.begin(), c.end(), std::size_t{0}); }

bool divides(const Counts& t, const Counts& s) {
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] > s[i]) return false;
    return true;
}

Counts minus(const Counts& s, const Counts& t) {
    Counts out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i] - t[i];
    return out;
}

Mask support(const Counts& c) {
    Mask m;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i]) m.set(i);
    return m;
}

Mask translate_neg(const Group& g, const Mask& m, std::uint32_t a) { return g.translate(m, Element{g.neg_index(a)}); }

bool is_subgroup_mask(const Group& g, const Mask& m) { return m.test(0) && g.sumset(m, m) == m; }

bool periodic_or_empty(const Group& g, const Mask& a, const Mask& k) { return a.none() || g.sumset(a, k) == a; }

std::size_t sum_of_squares(const Parts& parts) {
    std::size_t s = 0;
    for (const auto& m : parts) s += m.count() * m.count();
    return s;
}

Parts sorted_parts(Parts parts) {
    std::sort(parts.begin(), parts.end(), [](const Mask& a, const Mask& b) {
        const auto ca = a.count(), cb = b.count();
        if (ca != cb) return ca < cb;
        return a < b;
    });
    return parts;
}

std::size_t off_z_excess(const Parts& parts, const Mask& z) {
    std::size_t e = 0;
    for (const auto& m : parts) {
        const auto off = (m - z).count();
        if (off > 1) e += off - 1;
    }
    return e;
}

bool is_klein_mask(const Group& g, const Mask& k) {
    if (k.count() != 4 || !is_subgroup_mask(g, k)) return false;
    bool exp2 = true;
    k.for_each([&](std::size_t e) {
        const auto i = static_cast<std::uint32_t>(e);
        exp2 = exp2 && g.add_index(i, i) == 0;
    });
    return exp2;
}

Mask subsum_counts(const Group& g, const Counts& s, std::size_t n) {
    std::vector<Mask> reach(n + 1);
    reach[0] = Mask::single(0);
    for (std::uint32_t t = 0; t < s.size(); ++t) {
        if (s[t] == 0) continue;
        for (std::size_t c = n; c >= 1; --c) {
            std::uint32_t shift = 0;
            for (std::size_t k = 1; k <= s[t] && k <= c; ++k) {
                shift = g.add_index(shift, t);
                if (reach[c - k].any()) reach[c] |= g.translate(reach[c - k], Element{shift});
            }
        }
    }
    return reach[n];
}

namespace {

// Orderly generation: parts that are still identical are interchangeable,
// so a type may only enter a prefix of each run of identical parts.
class Enumerator {
public:
    Enumerator(const Counts& s, std::size_t ell, std::size_t n, const std::function<bool(const Parts&)>& f)
        : s_(s), ell_(ell), n_(n), f_(f), parts_(n) {
        for (std::uint32_t t = 0; t < s.size(); ++t)
            if (s[t]) types_.push_back(t);
        tail_.assign(types_.size() + 1, 0);
        included_.resize(types_.size());
        for (std::size_t i = types_.size(); i-- > 0;)
            tail_[i] = tail_[i + 1] + std::min<std::size_t>(s[types_[i]], n);
    }

    bool run() {
        if (n_ == 0 || ell_ < n_) return false;
        level(0, ell_);
        return stop_;
    }

private:
    void level(std::size_t ti, std::size_t left) {
        if (stop_) return;
        std::size_t empty = 0;
        for (const auto& m : parts_) empty += m.none();
        if (empty > left) return;
        if (left == 0) {
            if (f_(parts_)) stop_ = true;
            return;
        }
        if (ti == types_.size() || tail_[ti] < left) return;
        const std::uint32_t t = types_[ti];
        const std::size_t hi = std::min<std::size_t>({s_[t], n_, left});
        for (std::size_t c = hi + 1; c-- > 0 && !stop_;) {
            included_[ti].assign(n_, false);
            choose(ti, t, 0, c, left - c);
        }
    }

    void choose(std::size_t ti, std::uint32_t t, std::size_t j, std::size_t need, std::size_t left) {
        if (stop_) return;
        if (need == 0) {
            level(ti + 1, left);
            return;
        }
        if (n_ - j < need) return;
        bool allowed = true;
        for (std::size_t p = 0; p < j; ++p)
            if (!included_[ti][p] && parts_[p] == parts_[j]) {
                allowed = false;
                break;
            }
        if (allowed) {
            included_[ti][j] = true;
            parts_[j].set(t);
            choose(ti, t, j + 1, need - 1, left);
            parts_[j].reset(t);
            included_[ti][j] = false;
        }
        choose(ti, t, j + 1, need, left);
    }

    const Counts& s_;
    std::size_t ell_, n_;
    const std::function<bool(const Parts&)>& f_;
    Parts parts_;
    std::vector<std::uint32_t> types_;
    std::vector<std::size_t> tail_;
    std::vector<std::vector<bool>> included_;  // per type level
    bool stop_ = false;
};

}  // namespace

bool enumerate_partitions(const Counts& s, std::size_t ell, std::size_t n,
                          const std::function<bool(const Parts&)>& f) {
    Enumerator e(s, ell, n, f);
    return e.run();
}

double search_size(const Counts& s, std::size_t ell, std::size_t n) {
    // Coefficient of z^ell in prod_t sum_{k <= min(v_t, n)} C(n, k) z^k.
    std::vector<double> binom(n + 1, 1);
    for (std::size_t k = 1; k <= n; ++k) binom[k] = binom[k - 1] * static_cast<double>(n - k + 1) / static_cast<double>(k);
    std::vector<double> poly(ell + 1, 0);
    poly[0] = 1;
    for (auto v : s) {
        if (v == 0) continue;
        std::vector<double> next(ell + 1, 0);
        for (std::size_t a = 0; a <= ell; ++a) {
            if (poly[a] == 0) continue;
            for (std::size_t k = 0; k <= std::min<std::size_t>(v, n) && a + k <= ell; ++k) next[a + k] += poly[a] * binom[k];
        }
        poly = std::move(next);
    }
    return poly[ell];
}

std::optional<Parts> search(const Counts& s, std::size_t ell, std::size_t n,
                            const std::function<bool(const Parts&)>& pred) {
    if (search_size(s, ell, n) > kFallbackBudget) fail(ErrorKind::Capacity, "fallback search exceeds its budget");
    std::optional<Parts> found;
    enumerate_partitions(s, ell, n, [&](const Parts& p) {
        if (!pred(p)) return false;
        found = p;
        return true;
    });
    return found;
}

std::size_t move_cap(const Group& g, std::size_t s_len, std::size_t n) {
    return std::max<std::size_t>(1, g.order() * std::max<std::size_t>(s_len, 1) * n * 16);
}

void climb(const Group& g, Parts& parts, Counts& spare, MoveKinds kinds, const Feasible& feasible,
           const Objective& objective, std::size_t cap) {
    Score current = objective(parts, spare);
    const std::size_t n = parts.size();
    std::size_t taken = 0;

    auto consider = [&](Parts& cand, Counts& cand_spare) {
        if (!feasible(cand, cand_spare)) return false;
        const Score s = objective(cand, cand_spare);
        if (!(s > current)) return false;
        current = s;
        parts = cand;
        spare = cand_spare;
        return true;
    };

    for (;;) {
        bool improved = false;
        Parts cand = parts;
        Counts cand_spare = spare;
        for (std::uint32_t e = 0; e < g.order() && !improved; ++e) {
            if (kinds.move)
                for (std::size_t j = 0; j < n && !improved; ++j) {
                    if (!parts[j].test(e) || parts[j].count() < 2) continue;
                    for (std::size_t k = 0; k < n && !improved; ++k) {
                        if (k == j || parts[k].test(e)) continue;
                        cand[j].reset(e);
                        cand[k].set(e);
                        improved = consider(cand, cand_spare);
                        if (!improved) cand = parts;
                    }
                }
            if (kinds.swap)
                for (std::size_t j = 0; j < n && !improved; ++j) {
                    if (!parts[j].test(e)) continue;
                    for (std::uint32_t f = e + 1; f < g.order() && !improved; ++f) {
                        if (parts[j].test(f)) continue;
                        for (std::size_t k = 0; k < n && !improved; ++k) {
                            if (k == j || !parts[k].test(f) || parts[k].test(e)) continue;
                            cand[j].reset(e);
                            cand[j].set(f);
                            cand[k].reset(f);
                            cand[k].set(e);
                            improved = consider(cand, cand_spare);
                            if (!improved) cand = parts;
                        }
                    }
                }
            if (kinds.exchange)
                for (std::size_t j = 0; j < n && !improved; ++j) {
                    if (!parts[j].test(e)) continue;
                    for (std::uint32_t f = 0; f < g.order() && !improved; ++f) {
                        if (f == e || spare[f] == 0 || parts[j].test(f)) continue;
                        cand[j].reset(e);
                        cand[j].set(f);
                        ++cand_spare[e];
                        --cand_spare[f];
                        improved = consider(cand, cand_spare);
                        if (!improved) {
                            cand = parts;
                            cand_spare = spare;
                        }
                    }
                }
        }
        if (!improved) return;
        if (++taken > cap) fail(ErrorKind::InternalSoundness, "move system exceeded its move cap");
    }
}

Parts lift_parts(const QuotientMap& q, const GSequence& s, const Parts& quotient_parts) {
    const Group& img = *q.image();
    std::vector<std::vector<std::uint32_t>> pool(img.order());
    for (std::uint32_t i = 0; i < s.counts().size(); ++i)
        for (std::uint32_t k = 0; k < s.counts()[i]; ++k) pool[q(Element{i}).index].push_back(i);
    std::vector<std::size_t> next(img.order(), 0);
    Parts out(quotient_parts.size());
    for (std::size_t p = 0; p < quotient_parts.size(); ++p)
        quotient_parts[p].for_each([&](std::size_t c) {
            if (next[c] >= pool[c].size()) fail(ErrorKind::InternalSoundness, "lift ran out of terms");
            out[p].set(pool[c][next[c]++]);
        });
    return out;
}

ReducedMax maximal_reduced(const Group& g, const Mask& x, const Counts& s, const Counts& sprime, std::size_t n,
                           SearchMode mode) {
    const std::size_t ell = total(sprime);
    const std::size_t bound = g.sumset(x, subsum_counts(g, s, n)).count();
    ReducedMax out;
    bool found = false;
    if (mode == SearchMode::Exhaustive) {
        enumerate_partitions(s, ell, n, [&](const Parts& p) {
            const auto size = parts_sum(g, x, p).count();
            if (!found || size > out.size) {
                out.parts = p;
                out.size = size;
                found = true;
            }
            return out.size >= bound;
        });
    } else {
        // Start from a round-robin deal of S' and climb on |X + sum B_i|.
        Parts parts(n);
        std::vector<std::uint32_t> order;
        for (std::uint32_t i = 0; i < sprime.size(); ++i)
            if (sprime[i]) order.push_back(i);
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return sprime[a] > sprime[b]; });
        std::size_t cursor = 0;
        for (auto e : order)
            for (std::uint32_t k = 0; k < sprime[e]; ++k) parts[cursor++ % n].set(e);
        Counts spare = minus(s, sprime);
        climb(g, parts, spare, MoveKinds{true, true, true}, [](const Parts&, const Counts&) { return true; },
              [&](const Parts& p, const Counts&) {
                  return Score{static_cast<std::int64_t>(parts_sum(g, x, p).count()), 0, 0};
              },
              move_cap(g, total(s), n));
        out.parts = parts;
        out.size = parts_sum(g, x, parts).count();
        out.heuristic = true;
        found = true;
    }
    if (!found) fail(ErrorKind::HypothesisNotMet, "no partition of the requested shape exists");
    return out;
}

SearchMode pick_mode(const Counts& s, std::size_t ell, std::size_t n, double threshold) {
    return search_size(s, ell, n) <= threshold ? SearchMode::Exhaustive : SearchMode::LocalSearch;
}

}  // namespace subsum::detail

namespace subsum {

using namespace detail;

double partition_search_size(const GSequence& s, std::size_t ell, std::size_t n) {
    return search_size(s.counts(), ell, n);
}

namespace {

void check_maximal_inputs(const GroupSet& x, const Subgroup& l, const GSequence& s, const GSequence& sprime,
                          std::size_t n) {
    require_same_group(x.group(), s.group());
    require_same_group(l.group(), s.group());
    if (x.empty()) fail(ErrorKind::HypothesisNotMet, "X must be nonempty");
    if (!l.mask().subset_of(stabilizer_mask(x.g(), x.mask()))) fail(ErrorKind::HypothesisNotMet, "L is not inside H(X)");
    if (!sprime.divides(s)) fail(ErrorKind::HypothesisNotMet, "S' does not divide S");
    if (n < 1 || n > sprime.length()) fail(ErrorKind::HypothesisNotMet, "need 1 <= n <= |S'|");
    const QuotientMap q(s.group(), l);
    if (push(q, sprime).max_multiplicity() > n) fail(ErrorKind::HypothesisNotMet, "h(phi_L(S')) exceeds n");
}

MaximalPartition maximal_with_mode(const GroupSet& x, const Subgroup& l, const GSequence& s, const GSequence& sprime,
                                   std::size_t n, std::optional<SearchMode> mode, double threshold) {
    check_maximal_inputs(x, l, s, sprime, n);
    if (l.is_trivial()) {
        const SearchMode m = mode.value_or(pick_mode(s.counts(), sprime.length(), n, threshold));
        auto r = maximal_reduced(s.g(), x.mask(), s.counts(), sprime.counts(), n, m);
        return MaximalPartition{SetPartition(s.group(), sorted_parts(r.parts)), r.size, r.heuristic};
    }
    const QuotientMap q(s.group(), l);
    const GSequence sq = push(q, s), spq = push(q, sprime);
    const GroupSet xq = q.push(x);
    const SearchMode m = mode.value_or(pick_mode(sq.counts(), spq.length(), n, threshold));
    auto r = maximal_reduced(*q.image(), xq.mask(), sq.counts(), spq.counts(), n, m);
    Parts lifted = lift_parts(q, s, r.parts);
    return MaximalPartition{SetPartition(s.group(), sorted_parts(lifted)), r.size * l.order(), r.heuristic};
}

}  // namespace

MaximalPartition maximal_partition(const GroupSet& x, const Subgroup& l, const GSequence& s, const GSequence& sprime,
                                   std::size_t n, SearchMode mode) {
    return maximal_with_mode(x, l, s, sprime, n, mode, 0);
}

MaximalPartition maximal_partition(const GroupSet& x, const Subgroup& l, const GSequence& s, const GSequence& sprime,
                                   std::size_t n, const EngineOptions& opts) {
    return maximal_with_mode(x, l, s, sprime, n, std::nullopt, opts.exhaustive_threshold);
}

}  // namespace subsum
