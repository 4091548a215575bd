#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "buchset/bitwindow.hpp"
#include "buchset/errors.hpp"

namespace buchset {

/// Global cap (in bits) on dense window allocations. Oversized sets or
/// sumset iterations throw window_error instead of thrashing. Initialized
/// from BUCHSET_WINDOW_CAP_BITS when set, else 2^30.
std::int64_t window_cap_bits();
void set_window_cap_bits(std::int64_t bits);

/// Finite set of integers stored as a dense bit window over [min, max].
/// Immutable after construction; size/min/max are O(1).
class FiniteIntSet {
public:
    FiniteIntSet() = default;  // empty set

    static FiniteIntSet from_values(std::span<const std::int64_t> values);
    static FiniteIntSet from_values(std::initializer_list<std::int64_t> values);
    /// [lo, hi]; empty when hi < lo.
    static FiniteIntSet interval(std::int64_t lo, std::int64_t hi);
    /// Adopts a window whose bit i encodes the integer origin + i.
    static FiniteIntSet from_window(std::int64_t origin, const detail::BitWindow& w);

    bool empty() const { return count_ == 0; }
    std::int64_t size() const { return count_; }
    std::int64_t min() const;
    std::int64_t max() const;
    bool contains(std::int64_t x) const { return bits_.test(x - origin_); }
    std::vector<std::int64_t> values() const;

    template <typename F>
    void for_each(F&& f) const {
        bits_.for_each_set([&](std::int64_t i) { f(origin_ + i); });
    }

    /// Renders as e.g. "{1..12, 19, 21, 24, 25}" with runs collapsed.
    std::string to_string() const;

    bool operator==(const FiniteIntSet&) const = default;

    // window access for the sumset kernels
    std::int64_t origin() const { return origin_; }
    const detail::BitWindow& window() const { return bits_; }

private:
    std::int64_t origin_ = 0;  // value of bit 0; equals min() when nonempty
    std::int64_t count_ = 0;
    detail::BitWindow bits_;   // exactly max-min+1 bits when nonempty
};

/// Deduplicating, sorting constructor (duplicates in the input are fine).
FiniteIntSet make_set(std::span<const std::int64_t> values);
FiniteIntSet make_set(std::initializer_list<std::int64_t> values);

/// {a+b : a in A, b in B}; empty when either side is empty.
FiniteIntSet sumset(const FiniteIntSet& a, const FiniteIntSet& b);

/// A represented as scale * base + offset with 0 in base and, for
/// |A| >= 2, gcd(base) = 1. n-fold sumsets of base and of A have equal
/// cardinality for every n.
struct NormalizedSet {
    FiniteIntSet base;
    std::int64_t offset = 0;  // min of the original set
    std::int64_t scale = 1;   // gcd of (original - offset); 1 for singletons
    std::int64_t a0 = 0;      // max(base)
    std::int64_t k = 0;       // cardinality
};

/// Pre: |A| >= 1.
NormalizedSet normalize(const FiniteIntSet& a);

/// max((k-2)(a0-1)a0, 1), the fold count from which the interval
/// decomposition of n*base is guaranteed. Pre: k >= 2. Saturates at
/// INT64_MAX instead of overflowing.
std::int64_t nathanson_threshold(const NormalizedSet& n);

/// n*base = low ⊔ [c, a0*n-d] ⊔ (a0*n - high), extracted at a single n.
struct NathansonDecomposition {
    std::int64_t n = 0;  // fold count it was extracted at
    std::int64_t c = 0;
    std::int64_t d = 0;
    FiniteIntSet low;   // subset of [0, c-2]
    FiniteIntSet high;  // offsets below a0*n, subset of [0, d-2]
};

/// Deterministic extraction: the middle interval is the maximal run of
/// consecutive members containing floor(a0*n/2). Works for any n >= 1 and
/// is guaranteed to succeed for n >= nathanson_threshold; throws
/// decomposition_error when the midpoint is not a member.
NathansonDecomposition extract_decomposition(const NormalizedSet& ns, std::int64_t n);

/// Iterates n*B for a base set B containing 0, over windows [0, a0*n].
/// Starts at n = 1. Cheap cardinality and full-interval queries per step.
class BaseSumsetIterator {
public:
    /// Pre: base nonempty, min(base) == 0.
    explicit BaseSumsetIterator(const FiniteIntSet& base);
    BaseSumsetIterator(const FiniteIntSet& base, std::int64_t cap_bits);

    std::int64_t n() const { return n_; }
    std::int64_t a0() const { return a0_; }
    std::int64_t cardinality() const { return card_; }
    bool full_interval() const { return card_ == a0_ * n_ + 1; }
    const detail::BitWindow& window() const { return cur_; }

    /// n -> n+1. Throws window_error when the next window would exceed
    /// the cap.
    void advance();

private:
    std::vector<std::int64_t> elems_;
    std::int64_t a0_ = 0;
    std::int64_t n_ = 1;
    std::int64_t card_ = 0;
    std::int64_t cap_bits_ = 0;
    detail::BitWindow cur_;
};

/// Lazy stream of 1A, 2A, ..., n_max*A. Terms are produced on demand so a
/// caller can stop early.
///
///   SumsetSequence seq(a, 10);
///   while (seq.next()) use(seq.n(), seq.current());
class SumsetSequence {
public:
    /// Pre: |A| >= 1 and n_max >= 1.
    SumsetSequence(const FiniteIntSet& a, std::int64_t n_max);

    bool next();
    std::int64_t n() const { return produced_; }
    const FiniteIntSet& current() const { return current_; }

private:
    NormalizedSet norm_;
    BaseSumsetIterator iter_;
    std::int64_t n_max_ = 0;
    std::int64_t produced_ = 0;
    FiniteIntSet current_;
};

inline SumsetSequence iterated_sumsets(const FiniteIntSet& a, std::int64_t n_max) {
    return SumsetSequence(a, n_max);
}

namespace detail {

/// Midpoint-anchored run decomposition of a window over [0, top]:
/// members = low ⊔ [c, top-d] ⊔ (top - high).
struct RawDecomposition {
    std::int64_t c = 0;
    std::int64_t d = 0;
    std::vector<std::int64_t> low;
    std::vector<std::int64_t> high;  // offsets from top
    bool valid = false;
};

RawDecomposition extract_raw(const BitWindow& w, std::int64_t top);

/// Certifies that the decomposition extracted at the iterator's current n
/// persists for every later fold count (so |m*B| = a0*m + b from here on).
/// Checks: the middle run spans at least a0, adding the base to the low
/// part creates nothing new below c, and symmetrically on the reflected
/// high side.
bool decomposition_is_stable(const RawDecomposition& r, std::span<const std::int64_t> base_elems,
                             std::int64_t a0, std::int64_t middle_len);

}  // namespace detail

}  // namespace buchset
