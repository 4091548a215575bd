#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "buchset/intset.hpp"
#include "buchset/semigroup.hpp"

namespace buchset {

/// beta_A(n) = |nA| - (2n-1)(|A|-1), computed through the sumset engine.
/// Defined for every finite A (2n-1 for the empty set, 1 for singletons).
/// Pre: n >= 1.
std::int64_t beta(const FiniteIntSet& a, std::int64_t n);

struct ProfileOptions {
    /// Stop explicit iteration at the first fold count whose interval
    /// decomposition is certified to persist. Disable to iterate all the
    /// way to the full-interval / threshold stop (slower, same numbers).
    bool use_stability_certificate = true;
    std::int64_t cap_bits = 0;  ///< 0 = global window cap
};

/// Exact profile of beta: explicit values for n = 1..n* plus a linear
/// tail beta(n) = tail_slope*n + tail_intercept that is already exact at
/// n* (the seam) and for every n beyond.
struct BetaProfile {
    std::vector<std::int64_t> values;  ///< values[i] = beta(i+1), up to n*
    std::int64_t tail_slope = 0;       ///< a0 - 2(k-1) of the normalized set
    std::int64_t tail_intercept = 0;   ///< b + k - 1 where |nA0| = a0*n + b
    std::int64_t tail_start = 0;       ///< n* + 1

    /// Explicit value or tail evaluation. Pre: n >= 1.
    std::int64_t beta_at(std::int64_t n) const;
};

/// Pre: |A| >= 2.
BetaProfile beta_profile(const FiniteIntSet& a, const ProfileOptions& opts = {});

/// Buch(A) = {n >= 2 : beta_A(n) >= 1}. Either a finite set (all members
/// listed in head) or cofinite (head lists the members below
/// cofinite_from; everything from cofinite_from on is a member, and
/// cofinite_from is minimal with that property).
struct BuchweitzResult {
    enum class Kind { Finite, Cofinite };
    Kind kind = Kind::Finite;
    std::vector<std::int64_t> head;
    std::int64_t cofinite_from = 0;

    bool contains(std::int64_t n) const;
    bool empty() const { return kind == Kind::Finite && head.empty(); }
    /// "{}", "{2, 3}", "{9..11}", "[2, inf)", "{3} u [5, inf)"
    std::string to_string() const;
};

BuchweitzResult buchweitz_set(const FiniteIntSet& a);

/// Reads the members off an already computed profile.
BuchweitzResult buchweitz_from_profile(const BetaProfile& p);

/// B(S) = Buch(N \ S). For genus >= 2 the result is guaranteed finite;
/// a cofinite outcome there is an engine bug and throws std::logic_error.
BuchweitzResult buchweitz_set_of_semigroup(const NumericalSemigroup& s);

}  // namespace buchset
