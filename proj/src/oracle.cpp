#include "subsum/oracle.hpp"

#include <cmath>

#include "subsum/error.hpp"

namespace subsum {

namespace {

std::vector<std::uint64_t> k_subsets(std::size_t n, std::size_t k) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits)
        if (static_cast<std::size_t>(std::popcount(bits)) == k) out.push_back(bits);
    return out;
}

double binomial(std::size_t n, std::size_t k) {
    double r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

}  // namespace

PartitionEnumerator::PartitionEnumerator(GSequence sprime, std::size_t n) : sprime_(std::move(sprime)), n_(n) {
    if (n_ < 1 || n_ > sprime_.length() || sprime_.max_multiplicity() > n_)
        fail(ErrorKind::HypothesisNotMet, "enumeration needs h(S') <= n <= |S'|");
    if (n_ > 20) fail(ErrorKind::Capacity, "oracle enumeration supports at most 20 parts");
    for (std::uint32_t i = 0; i < sprime_.counts().size(); ++i) {
        const std::uint32_t k = sprime_.counts()[i];
        if (k == 0) continue;
        types_.push_back(i);
        choices_.push_back(k_subsets(n_, k));
        raw_count_ *= binomial(n_, k);
    }
    cursor_.assign(types_.size(), 0);
}

bool PartitionEnumerator::advance() {
    for (std::size_t t = 0; t < cursor_.size(); ++t) {
        if (++cursor_[t] < choices_[t].size()) return true;
        cursor_[t] = 0;
    }
    return false;
}

bool PartitionEnumerator::emit_current(std::vector<Mask>& parts) const {
    parts.assign(n_, Mask{});
    for (std::size_t t = 0; t < types_.size(); ++t) {
        const std::uint64_t bits = choices_[t][cursor_[t]];
        for (std::size_t j = 0; j < n_; ++j)
            if ((bits >> j) & 1U) parts[j].set(types_[t]);
    }
    for (std::size_t j = 0; j < n_; ++j) {
        if (parts[j].none()) return false;
        if (j > 0 && parts[j] < parts[j - 1]) return false;
    }
    return true;
}

std::optional<SetPartition> PartitionEnumerator::next() {
    std::vector<Mask> parts;
    while (!done_) {
        if (started_ && !advance()) {
            done_ = true;
            break;
        }
        started_ = true;
        if (emit_current(parts)) return SetPartition(sprime_.group(), parts);
    }
    return std::nullopt;
}

std::vector<SetPartition> all_setpartitions(const GSequence& sprime, std::size_t n) {
    PartitionEnumerator it(sprime, n);
    std::vector<SetPartition> out;
    while (auto p = it.next()) out.push_back(std::move(*p));
    return out;
}

namespace {

std::size_t sumset_size(const GroupSet& x, const SetPartition& p) {
    Mask acc = x.mask();
    for (const auto& m : p.masks()) acc = x.g().sumset(acc, m);
    return acc.count();
}

}  // namespace

std::pair<std::size_t, SetPartition> oracle_max_sumset(const GroupSet& x, const GSequence& sprime, std::size_t n,
                                                        double capacity) {
    require_same_group(x.group(), sprime.group());
    if (x.empty()) fail(ErrorKind::EmptyOperand, "X must be nonempty");
    PartitionEnumerator it(sprime, n);
    if (it.raw_count() > capacity) fail(ErrorKind::Capacity, "oracle enumeration exceeds its budget");
    std::optional<std::pair<std::size_t, SetPartition>> best;
    while (auto p = it.next()) {
        const auto size = sumset_size(x, *p);
        if (!best || size > best->first) best.emplace(size, std::move(*p));
    }
    return std::move(*best);
}

void for_each_subsequence(const GSequence& s, std::size_t ell, const std::function<void(const GSequence&)>& f) {
    const auto& counts = s.counts();
    std::vector<std::uint32_t> take(counts.size(), 0);
    // Remaining capacity after position i, to prune dead branches.
    std::vector<std::size_t> tail(counts.size() + 1, 0);
    for (std::size_t i = counts.size(); i-- > 0;) tail[i] = tail[i + 1] + counts[i];
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
        if (left == 0) {
            f(GSequence(s.group(), take));
            return;
        }
        if (i == counts.size() || tail[i] < left) return;
        const std::uint32_t hi = static_cast<std::uint32_t>(std::min<std::size_t>(counts[i], left));
        for (std::uint32_t k = hi + 1; k-- > 0;) {
            take[i] = k;
            rec(i + 1, left - k);
        }
        take[i] = 0;
    };
    rec(0, ell);
}

std::optional<std::pair<std::size_t, SetPartition>> oracle_max_sumset_over(const GroupSet& x, const GSequence& s,
                                                                           std::size_t ell, std::size_t n,
                                                                           bool equitable_only, double capacity) {
    require_same_group(x.group(), s.group());
    if (x.empty()) fail(ErrorKind::EmptyOperand, "X must be nonempty");
    std::optional<std::pair<std::size_t, SetPartition>> best;
    double spent = 0;
    for_each_subsequence(s, ell, [&](const GSequence& t) {
        if (n < 1 || t.max_multiplicity() > n || n > t.length()) return;
        PartitionEnumerator it(t, n);
        spent += it.raw_count();
        if (spent > capacity) fail(ErrorKind::Capacity, "oracle enumeration exceeds its budget");
        while (auto p = it.next()) {
            if (equitable_only && !is_equitable(*p)) continue;
            const auto size = sumset_size(x, *p);
            if (!best || size > best->first) best.emplace(size, std::move(*p));
        }
    });
    return best;
}

GroupSet oracle_subsums(const GSequence& s, std::size_t n) {
    if (n > s.length())
        fail(ErrorKind::Range, "n = " + std::to_string(n) + " exceeds |S| = " + std::to_string(s.length()));
    Mask out;
    for_each_subsequence(s, n, [&](const GSequence& t) { out.set(t.total_sum().index); });
    return GroupSet(s.group(), out);
}

}  // namespace subsum
