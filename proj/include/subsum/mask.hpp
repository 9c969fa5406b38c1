#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>

namespace subsum {

// Fixed-capacity bitmask over element indices. The first word covers the
// default capacity of 64 elements; the remaining words back the
// SUBSUM_CAPACITY override (hard limit kMaxElements).
class Mask {
public:
    static constexpr std::size_t kWords = 4;
    static constexpr std::size_t kMaxElements = kWords * 64;

    constexpr Mask() = default;

    static constexpr Mask single(std::size_t i) {
        Mask m;
        m.set(i);
        return m;
    }

    // Bits [0, n).
    static constexpr Mask prefix(std::size_t n) {
        Mask m;
        for (std::size_t w = 0; w < kWords && n > 0; ++w) {
            if (n >= 64) {
                m.words_[w] = ~std::uint64_t{0};
                n -= 64;
            } else {
                m.words_[w] = (std::uint64_t{1} << n) - 1;
                n = 0;
            }
        }
        return m;
    }

    constexpr void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    constexpr void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    constexpr bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }

    constexpr std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    constexpr bool none() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }
    constexpr bool any() const { return !none(); }

    // Lowest set bit; kMaxElements when empty.
    constexpr std::size_t first() const {
        for (std::size_t w = 0; w < kWords; ++w)
            if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
        return kMaxElements;
    }

    constexpr bool subset_of(const Mask& other) const {
        for (std::size_t w = 0; w < kWords; ++w)
            if (words_[w] & ~other.words_[w]) return false;
        return true;
    }

    constexpr bool intersects(const Mask& other) const {
        for (std::size_t w = 0; w < kWords; ++w)
            if (words_[w] & other.words_[w]) return true;
        return false;
    }

    template <class F>
    constexpr void for_each(F&& f) const {
        for (std::size_t w = 0; w < kWords; ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                const auto b = static_cast<std::size_t>(std::countr_zero(bits));
                f(w * 64 + b);
                bits &= bits - 1;
            }
        }
    }

    constexpr Mask& operator|=(const Mask& o) {
        for (std::size_t w = 0; w < kWords; ++w) words_[w] |= o.words_[w];
        return *this;
    }
    constexpr Mask& operator&=(const Mask& o) {
        for (std::size_t w = 0; w < kWords; ++w) words_[w] &= o.words_[w];
        return *this;
    }
    constexpr Mask& operator^=(const Mask& o) {
        for (std::size_t w = 0; w < kWords; ++w) words_[w] ^= o.words_[w];
        return *this;
    }
    // Set difference.
    constexpr Mask& operator-=(const Mask& o) {
        for (std::size_t w = 0; w < kWords; ++w) words_[w] &= ~o.words_[w];
        return *this;
    }

    friend constexpr Mask operator|(Mask a, const Mask& b) { return a |= b; }
    friend constexpr Mask operator&(Mask a, const Mask& b) { return a &= b; }
    friend constexpr Mask operator^(Mask a, const Mask& b) { return a ^= b; }
    friend constexpr Mask operator-(Mask a, const Mask& b) { return a -= b; }

    friend constexpr bool operator==(const Mask&, const Mask&) = default;

    // Ordered as an unsigned integer (highest word most significant).
    friend constexpr std::strong_ordering operator<=>(const Mask& a, const Mask& b) {
        for (std::size_t w = kWords; w-- > 0;)
            if (a.words_[w] != b.words_[w]) return a.words_[w] <=> b.words_[w];
        return std::strong_ordering::equal;
    }

    constexpr std::uint64_t word(std::size_t w) const { return words_[w]; }

    std::size_t hash() const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (auto w : words_) {
            h ^= w;
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }

private:
    std::array<std::uint64_t, kWords> words_{};
};

}  // namespace subsum
