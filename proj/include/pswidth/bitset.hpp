#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace psw {

/// Fixed-width bit vector. Width is set at construction and every binary
/// operation requires both operands to have the same width.
///
/// Ordering is lexicographic over the 64-bit words, lowest word first,
/// each word compared as an unsigned integer. Any total order works for the
/// sort-then-dedup normalization of set families; this one is cheap.
class Bitset {
  public:
    using word_type = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    Bitset() = default;
    explicit Bitset(std::size_t width) : width_(width), words_((width + word_bits - 1) / word_bits, 0) {}

    std::size_t width() const noexcept { return width_; }

    bool test(std::size_t i) const {
        assert(i < width_);
        return (words_[i / word_bits] >> (i % word_bits)) & 1U;
    }
    Bitset& set(std::size_t i) {
        assert(i < width_);
        words_[i / word_bits] |= word_type{1} << (i % word_bits);
        return *this;
    }
    Bitset& reset(std::size_t i) {
        assert(i < width_);
        words_[i / word_bits] &= ~(word_type{1} << (i % word_bits));
        return *this;
    }
    Bitset& assign(std::size_t i, bool value) { return value ? set(i) : reset(i); }

    void clear() noexcept { std::fill(words_.begin(), words_.end(), 0); }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (word_type w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool none() const noexcept {
        return std::all_of(words_.begin(), words_.end(), [](word_type w) { return w == 0; });
    }
    bool any() const noexcept { return !none(); }

    bool is_subset_of(const Bitset& other) const {
        assert(width_ == other.width_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }
    bool intersects(const Bitset& other) const {
        assert(width_ == other.width_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & other.words_[i]) return true;
        return false;
    }

    Bitset& operator|=(const Bitset& other) {
        assert(width_ == other.width_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
        return *this;
    }
    Bitset& operator&=(const Bitset& other) {
        assert(width_ == other.width_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
        return *this;
    }
    /// Set difference.
    Bitset& operator-=(const Bitset& other) {
        assert(width_ == other.width_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
        return *this;
    }

    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

    /// Complement within the width.
    Bitset complement() const {
        Bitset r(width_);
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
        r.trim();
        return r;
    }

    /// Calls f(i) for every set bit in ascending order.
    template <class F>
    void for_each(F&& f) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            word_type w = words_[wi];
            while (w != 0) {
                const auto bit = static_cast<std::size_t>(std::countr_zero(w));
                f(wi * word_bits + bit);
                w &= w - 1;
            }
        }
    }

    std::vector<std::size_t> ones() const {
        std::vector<std::size_t> out;
        out.reserve(count());
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    bool operator==(const Bitset& other) const = default;

    std::strong_ordering operator<=>(const Bitset& other) const {
        if (auto c = width_ <=> other.width_; c != 0) return c;
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (auto c = words_[i] <=> other.words_[i]; c != 0) return c;
        return std::strong_ordering::equal;
    }

    std::size_t hash() const noexcept {
        std::size_t h = std::hash<std::size_t>{}(width_);
        for (word_type w : words_) h ^= std::hash<word_type>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }

    /// Renders as "{1,4,7}" with the given prefix on each index.
    std::string to_string(const std::string& prefix = "") const {
        std::string s = "{";
        bool first = true;
        for_each([&](std::size_t i) {
            if (!first) s += ',';
            s += prefix + std::to_string(i);
            first = false;
        });
        return s + '}';
    }

  private:
    void trim() {
        if (const std::size_t tail = width_ % word_bits; tail != 0 && !words_.empty())
            words_.back() &= (word_type{1} << tail) - 1;
    }

    std::size_t width_ = 0;
    std::vector<word_type> words_;
};

struct BitsetHash {
    std::size_t operator()(const Bitset& b) const noexcept { return b.hash(); }
};

/// A set of clause ids over the host formula's clause universe.
using ClauseSet = Bitset;

} // namespace psw
