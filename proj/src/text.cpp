#include "subsum/text.hpp"

#include <cctype>
#include <charconv>

#include "subsum/error.hpp"

namespace subsum {

namespace {

constexpr std::string_view kDot = "\xC2\xB7";

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool done() {
        skip_space();
        return pos_ == text_.size();
    }
    bool accept(std::string_view token) {
        skip_space();
        if (text_.substr(pos_, token.size()) != token) return false;
        pos_ += token.size();
        return true;
    }
    void expect(std::string_view token) {
        if (!accept(token)) error("expected '" + std::string(token) + "'");
    }
    // Either separator between sequence or partition terms.
    bool accept_dot() { return accept(kDot) || accept("*"); }

    std::int64_t integer() {
        skip_space();
        std::int64_t v = 0;
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc() || ptr == begin) error("expected an integer");
        pos_ += static_cast<std::size_t>(ptr - begin);
        return v;
    }

    [[noreturn]] void error(const std::string& what) const {
        fail(ErrorKind::Parse, what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

Element element_at(const GroupPtr& g, Cursor& c) {
    c.expect("(");
    std::vector<std::int64_t> residues;
    do residues.push_back(c.integer());
    while (c.accept(","));
    c.expect(")");
    if (residues.size() != g->rank())
        c.error("element has " + std::to_string(residues.size()) + " residues, group rank is " +
                std::to_string(g->rank()));
    return g->from_residues(residues);
}

GroupSet set_at(const GroupPtr& g, Cursor& c) {
    c.expect("{");
    Mask m;
    if (!c.accept("}")) {
        do m.set(element_at(g, c).index);
        while (c.accept(","));
        c.expect("}");
    }
    return GroupSet(g, m);
}

}  // namespace

GroupPtr parse_group(std::string_view text) {
    Cursor c(text);
    std::vector<std::uint32_t> orders;
    do {
        const auto v = c.integer();
        if (v < 0 || v > 0xFFFFFFFFLL) c.error("factor order out of range");
        orders.push_back(static_cast<std::uint32_t>(v));
    } while (c.accept(","));
    if (!c.done()) c.error("trailing input");
    return make_group(std::move(orders));
}

Element parse_element(const GroupPtr& g, std::string_view text) {
    Cursor c(text);
    const Element e = element_at(g, c);
    if (!c.done()) c.error("trailing input");
    return e;
}

GroupSet parse_set(const GroupPtr& g, std::string_view text) {
    Cursor c(text);
    GroupSet s = set_at(g, c);
    if (!c.done()) c.error("trailing input");
    return s;
}

GSequence parse_sequence(const GroupPtr& g, std::string_view text) {
    Cursor c(text);
    std::vector<std::uint32_t> counts(g->order(), 0);
    if (c.accept("[]")) {
        if (!c.done()) c.error("trailing input");
        return GSequence(g, counts);
    }
    do {
        const Element e = element_at(g, c);
        std::int64_t k = 1;
        if (c.accept("^")) {
            c.expect("[");
            k = c.integer();
            c.expect("]");
            if (k < 1) c.error("multiplicity must be positive");
        }
        counts[e.index] += static_cast<std::uint32_t>(k);
    } while (c.accept_dot());
    if (!c.done()) c.error("trailing input");
    return GSequence(g, counts);
}

SetPartition parse_partition(const GroupPtr& g, std::string_view text) {
    Cursor c(text);
    std::vector<GroupSet> parts;
    do parts.push_back(set_at(g, c));
    while (c.accept_dot());
    if (!c.done()) c.error("trailing input");
    for (const auto& p : parts)
        if (p.empty()) fail(ErrorKind::Parse, "partition parts must be nonempty");
    return SetPartition(g, parts);
}

}  // namespace subsum
