#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace buchset::detail {

// Fixed-width bit buffer indexed from 0. This is the sumset kernel's
// workhorse: A+B over nonnegative windows is an OR of word-shifted copies
// of B, one per element of A.
//
// Invariant: bits at positions >= width() are zero, so whole-vector
// comparisons and popcounts are exact.
class BitWindow {
public:
    BitWindow() = default;

    explicit BitWindow(std::int64_t bits) : bits_(bits) {
        if (bits < 0) throw std::invalid_argument("BitWindow: negative width");
        words_.assign(static_cast<std::size_t>((bits + 63) / 64), 0);
    }

    std::int64_t width() const { return bits_; }

    void set(std::int64_t i) {
        words_[static_cast<std::size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63);
    }

    void clear(std::int64_t i) {
        words_[static_cast<std::size_t>(i >> 6)] &= ~(std::uint64_t{1} << (i & 63));
    }

    bool test(std::int64_t i) const {
        if (i < 0 || i >= bits_) return false;
        return (words_[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1;
    }

    // this |= (src << shift); bits shifted past the window are dropped.
    void or_shifted(const BitWindow& src, std::int64_t shift) {
        if (shift < 0) throw std::invalid_argument("BitWindow: negative shift");
        const std::int64_t ws = shift >> 6;
        const int bs = static_cast<int>(shift & 63);
        const auto nd = static_cast<std::int64_t>(words_.size());
        const auto ns = static_cast<std::int64_t>(src.words_.size());
        if (bs == 0) {
            for (std::int64_t j = 0; j < ns && j + ws < nd; ++j)
                words_[static_cast<std::size_t>(j + ws)] |= src.words_[static_cast<std::size_t>(j)];
        } else {
            for (std::int64_t j = 0; j < ns && j + ws < nd; ++j) {
                const std::uint64_t w = src.words_[static_cast<std::size_t>(j)];
                if (w == 0) continue;
                words_[static_cast<std::size_t>(j + ws)] |= w << bs;
                if (j + ws + 1 < nd)
                    words_[static_cast<std::size_t>(j + ws + 1)] |= w >> (64 - bs);
            }
        }
        clear_tail();
    }

    std::int64_t popcount() const {
        std::int64_t n = 0;
        for (std::uint64_t w : words_) n += std::popcount(w);
        return n;
    }

    // Start of the maximal run of set bits containing i. Pre: test(i).
    std::int64_t run_start(std::int64_t i) const {
        std::int64_t w = i >> 6;
        // zeros at or below i within word w
        std::uint64_t inv = ~words_[static_cast<std::size_t>(w)] & mask_upto(static_cast<int>(i & 63));
        for (;;) {
            if (inv != 0) return (w << 6) + (63 - std::countl_zero(inv)) + 1;
            if (w == 0) return 0;
            --w;
            inv = ~words_[static_cast<std::size_t>(w)];
        }
    }

    // End of the maximal run of set bits containing i. Pre: test(i).
    std::int64_t run_end(std::int64_t i) const {
        std::int64_t w = i >> 6;
        const auto nw = static_cast<std::int64_t>(words_.size());
        // zeros at or above i within word w; positions >= bits_ read as zero
        std::uint64_t inv = ~words_[static_cast<std::size_t>(w)] &
                            ~(mask_upto(static_cast<int>(i & 63)) >> 1);
        for (;;) {
            if (inv != 0) {
                const std::int64_t pos = (w << 6) + std::countr_zero(inv);
                return (pos < bits_ ? pos : bits_) - 1;
            }
            ++w;
            if (w == nw) return bits_ - 1;
            inv = ~words_[static_cast<std::size_t>(w)];
        }
    }

    // Visits set bits in ascending order.
    template <typename F>
    void for_each_set(F&& f) const {
        for (std::size_t j = 0; j < words_.size(); ++j) {
            std::uint64_t w = words_[j];
            while (w != 0) {
                const int b = std::countr_zero(w);
                f(static_cast<std::int64_t>(j << 6) + b);
                w &= w - 1;
            }
        }
    }

    // Window holding src bits [lo, lo+len), re-based to position 0.
    static BitWindow slice(const BitWindow& src, std::int64_t lo, std::int64_t len) {
        BitWindow dst(len);
        const std::int64_t ws = lo >> 6;
        const int bs = static_cast<int>(lo & 63);
        const auto ns = static_cast<std::int64_t>(src.words_.size());
        for (std::int64_t j = 0; j < static_cast<std::int64_t>(dst.words_.size()); ++j) {
            std::uint64_t w = 0;
            if (ws + j < ns) w = src.words_[static_cast<std::size_t>(ws + j)] >> bs;
            if (bs != 0 && ws + j + 1 < ns)
                w |= src.words_[static_cast<std::size_t>(ws + j + 1)] << (64 - bs);
            dst.words_[static_cast<std::size_t>(j)] = w;
        }
        dst.clear_tail();
        return dst;
    }

    std::span<const std::uint64_t> words() const { return words_; }

    bool operator==(const BitWindow&) const = default;

private:
    static std::uint64_t mask_upto(int b) {
        // bits [0, b] set
        return b == 63 ? ~std::uint64_t{0} : (std::uint64_t{1} << (b + 1)) - 1;
    }

    void clear_tail() {
        const int rem = static_cast<int>(bits_ & 63);
        if (rem != 0 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << rem) - 1;
    }

    std::int64_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace buchset::detail
