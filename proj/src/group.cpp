#include "subsum/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <unordered_set>

#include "subsum/error.hpp"

namespace subsum {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidSpec: return "invalid-spec";
        case ErrorKind::GroupMismatch: return "group-mismatch";
        case ErrorKind::Capacity: return "capacity";
        case ErrorKind::InvalidSubgroup: return "invalid-subgroup";
        case ErrorKind::EmptyOperand: return "empty-operand";
        case ErrorKind::Range: return "range";
        case ErrorKind::NotSubsequence: return "not-a-subsequence";
        case ErrorKind::InvalidMove: return "invalid-move";
        case ErrorKind::HypothesisNotMet: return "hypothesis-not-met";
        case ErrorKind::Precondition: return "precondition";
        case ErrorKind::InternalSoundness: return "internal-soundness";
        case ErrorKind::ValidationInput: return "validation-input";
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

std::size_t group_capacity() {
    static const std::size_t cap = [] {
        std::size_t value = 64;
        if (const char* env = std::getenv("SUBSUM_CAPACITY")) {
            char* end = nullptr;
            const unsigned long long parsed = std::strtoull(env, &end, 10);
            if (end != env && *end == '\0' && parsed > 0) value = static_cast<std::size_t>(parsed);
        }
        return std::min(value, Mask::kMaxElements);
    }();
    return cap;
}

GroupPtr make_group(std::vector<std::uint32_t> orders) {
    return make_group(std::move(orders), group_capacity());
}

GroupPtr make_group(std::vector<std::uint32_t> orders, std::size_t capacity) {
    return std::make_shared<const Group>(std::move(orders), std::min(capacity, Mask::kMaxElements));
}

Group::Group(std::vector<std::uint32_t> orders, std::size_t capacity) : orders_(std::move(orders)) {
    if (orders_.empty()) fail(ErrorKind::InvalidSpec, "group needs at least one cyclic factor");
    std::uint64_t total = 1;
    for (auto d : orders_) {
        if (d == 0) fail(ErrorKind::InvalidSpec, "cyclic factor order must be positive");
        total *= d;
        if (total > capacity)
            fail(ErrorKind::Capacity, "group order exceeds capacity " + std::to_string(capacity));
    }
    order_ = static_cast<std::size_t>(total);

    std::vector<std::vector<std::uint32_t>> res(order_);
    for (std::size_t i = 0; i < order_; ++i) res[i] = residues(Element{static_cast<std::uint32_t>(i)});

    auto encode = [&](const std::vector<std::uint32_t>& r) {
        std::uint32_t idx = 0;
        for (std::size_t f = orders_.size(); f-- > 0;) idx = idx * orders_[f] + r[f];
        return idx;
    };

    add_table_.resize(order_ * order_);
    neg_table_.resize(order_);
    std::vector<std::uint32_t> tmp(orders_.size());
    for (std::size_t a = 0; a < order_; ++a) {
        for (std::size_t f = 0; f < orders_.size(); ++f) tmp[f] = (orders_[f] - res[a][f]) % orders_[f];
        neg_table_[a] = encode(tmp);
        for (std::size_t b = 0; b < order_; ++b) {
            for (std::size_t f = 0; f < orders_.size(); ++f) tmp[f] = (res[a][f] + res[b][f]) % orders_[f];
            add_table_[a * order_ + b] = encode(tmp);
        }
    }
}

Element Group::add(Element a, Element b) const {
    if (!contains(a) || !contains(b)) fail(ErrorKind::GroupMismatch, "element outside group " + spec_string());
    return Element{add_index(a.index, b.index)};
}

Element Group::neg(Element a) const {
    if (!contains(a)) fail(ErrorKind::GroupMismatch, "element outside group " + spec_string());
    return Element{neg_index(a.index)};
}

Element Group::sub(Element a, Element b) const { return add(a, neg(b)); }

Element Group::scalar_mul(std::int64_t m, Element a) const {
    if (!contains(a)) fail(ErrorKind::GroupMismatch, "element outside group " + spec_string());
    auto r = residues(a);
    std::vector<std::int64_t> out(r.size());
    for (std::size_t f = 0; f < r.size(); ++f) {
        const auto d = static_cast<std::int64_t>(orders_[f]);
        const std::int64_t mm = ((m % d) + d) % d;
        out[f] = (mm * static_cast<std::int64_t>(r[f])) % d;
    }
    return from_residues(out);
}

std::uint64_t Group::element_order(Element a) const {
    auto r = residues(a);
    std::uint64_t result = 1;
    for (std::size_t f = 0; f < r.size(); ++f) {
        const std::uint64_t d = orders_[f];
        const std::uint64_t ord = d / std::gcd<std::uint64_t>(d, r[f]);
        result = std::lcm(result, ord);
    }
    return result;
}

std::vector<std::uint32_t> Group::residues(Element a) const {
    std::vector<std::uint32_t> r(orders_.size());
    std::uint32_t idx = a.index;
    for (std::size_t f = 0; f < orders_.size(); ++f) {
        r[f] = idx % orders_[f];
        idx /= orders_[f];
    }
    return r;
}

Element Group::from_residues(std::span<const std::int64_t> residues) const {
    if (residues.size() != orders_.size())
        fail(ErrorKind::GroupMismatch, "residue tuple has " + std::to_string(residues.size()) +
                                           " entries, group " + spec_string() + " has " +
                                           std::to_string(orders_.size()) + " factors");
    std::uint32_t idx = 0;
    for (std::size_t f = orders_.size(); f-- > 0;) {
        const auto d = static_cast<std::int64_t>(orders_[f]);
        const auto r = ((residues[f] % d) + d) % d;
        idx = idx * orders_[f] + static_cast<std::uint32_t>(r);
    }
    return Element{idx};
}

Mask Group::translate(const Mask& m, Element g) const {
    Mask out;
    const std::size_t row = static_cast<std::size_t>(g.index) * order_;
    m.for_each([&](std::size_t b) { out.set(add_table_[row + b]); });
    return out;
}

Mask Group::negate(const Mask& m) const {
    Mask out;
    m.for_each([&](std::size_t b) { out.set(neg_table_[b]); });
    return out;
}

Mask Group::sumset(const Mask& a, const Mask& b) const {
    Mask out;
    if (a.none() || b.none()) return out;
    const Mask full = full_mask();
    // Iterate over the smaller operand.
    const Mask& small = a.count() <= b.count() ? a : b;
    const Mask& large = a.count() <= b.count() ? b : a;
    small.for_each([&](std::size_t x) {
        if (out == full) return;
        const std::size_t row = x * order_;
        large.for_each([&](std::size_t y) { out.set(add_table_[row + y]); });
    });
    return out;
}

const std::vector<Group::SubgroupRecord>& Group::subgroup_records() const {
    std::call_once(subgroups_once_, [this] {
        // Closure BFS: adjoin one element at a time to every subgroup found so
        // far; the BFS depth at discovery is the minimal number of generators.
        // members is a subgroup; the generated subgroup is members + <g>.
        auto close = [this](const Mask& members, Element g) {
            Mask result = members;
            for (std::uint32_t power = g.index; power != 0; power = add_index(power, g.index))
                if (!result.test(power)) result |= translate(members, Element{power});
            return result;
        };

        struct Hasher {
            std::size_t operator()(const Mask& m) const noexcept { return m.hash(); }
        };
        std::unordered_set<Mask, Hasher> seen;
        std::deque<SubgroupRecord> queue;
        SubgroupRecord trivial{Mask::single(0), {}};
        seen.insert(trivial.members);
        queue.push_back(trivial);
        subgroups_.push_back(trivial);
        while (!queue.empty()) {
            SubgroupRecord cur = std::move(queue.front());
            queue.pop_front();
            for (std::uint32_t g = 1; g < order_; ++g) {
                if (cur.members.test(g)) continue;
                Mask next = close(cur.members, Element{g});
                if (seen.insert(next).second) {
                    SubgroupRecord rec{next, cur.generators};
                    rec.generators.push_back(Element{g});
                    subgroups_.push_back(rec);
                    queue.push_back(std::move(rec));
                }
            }
        }
        std::sort(subgroups_.begin(), subgroups_.end(), [](const SubgroupRecord& a, const SubgroupRecord& b) {
            const auto ca = a.members.count(), cb = b.members.count();
            if (ca != cb) return ca < cb;
            return a.members < b.members;
        });
    });
    return subgroups_;
}

std::string Group::spec_string() const {
    std::string s;
    for (std::size_t f = 0; f < orders_.size(); ++f) {
        if (f) s += ',';
        s += std::to_string(orders_[f]);
    }
    return s;
}

std::string Group::format_element(Element a) const {
    std::string s = "(";
    auto r = residues(a);
    for (std::size_t f = 0; f < r.size(); ++f) {
        if (f) s += ',';
        s += std::to_string(r[f]);
    }
    s += ')';
    return s;
}

bool same_group(const GroupPtr& a, const GroupPtr& b) noexcept {
    return a == b || (a && b && a->same_as(*b));
}

void require_same_group(const GroupPtr& a, const GroupPtr& b) {
    if (!same_group(a, b))
        fail(ErrorKind::GroupMismatch, "operands belong to groups " + (a ? a->spec_string() : std::string("?")) +
                                           " and " + (b ? b->spec_string() : std::string("?")));
}

}  // namespace subsum
