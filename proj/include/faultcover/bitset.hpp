#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace faultcover {

/// Fixed-size dense bit set. The cover solvers spend nearly all their time in
/// unions, intersections and differences over these, so everything stays
/// word-at-a-time and allocation-free after construction.
class BitSet {
public:
    BitSet() = default;
    explicit BitSet(std::size_t bits)
        : bits_(bits), words_((bits + kWordBits - 1) / kWordBits, 0) {}

    std::size_t size() const { return bits_; }

    bool test(std::size_t i) const {
        return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
    }
    void set(std::size_t i) { words_[i / kWordBits] |= Word(1) << (i % kWordBits); }
    void reset(std::size_t i) { words_[i / kWordBits] &= ~(Word(1) << (i % kWordBits)); }
    void clear() { words_.assign(words_.size(), 0); }

    std::size_t count() const {
        std::size_t c = 0;
        for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool any() const {
        for (Word w : words_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    BitSet& operator|=(const BitSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    BitSet& operator&=(const BitSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    /// Set difference: remove every element of `o`.
    BitSet& operator-=(const BitSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    friend bool operator==(const BitSet& a, const BitSet& b) {
        return a.bits_ == b.bits_ && a.words_ == b.words_;
    }

    /// |this ∩ o| without materializing the intersection.
    std::size_t count_and(const BitSet& o) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
        return c;
    }
    /// |this \ o| without materializing the difference.
    std::size_t count_andnot(const BitSet& o) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(words_[i] & ~o.words_[i]));
        return c;
    }

    /// Visit set bits in ascending order.
    template <class F>
    void for_each_set(F&& f) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            Word w = words_[wi];
            while (w) {
                const auto bit = static_cast<std::size_t>(std::countr_zero(w));
                f(wi * kWordBits + bit);
                w &= w - 1;
            }
        }
    }

    std::vector<std::uint32_t> to_indices() const {
        std::vector<std::uint32_t> out;
        out.reserve(count());
        for_each_set([&](std::size_t i) { out.push_back(static_cast<std::uint32_t>(i)); });
        return out;
    }

private:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    std::size_t bits_ = 0;
    std::vector<Word> words_;
};

}  // namespace faultcover
