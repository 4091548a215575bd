#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "buchset/intset.hpp"

namespace buchset {

/// A numerical semigroup: a cofinite subset of N containing 0 and closed
/// under addition. Carries the gapset, the minimal generating set and the
/// classical invariants. Immutable after construction.
class NumericalSemigroup {
public:
    /// Builds from any generating set with gcd 1 (need not be minimal);
    /// membership is sieved up to min(gens)*max(gens), which provably
    /// covers the conductor. Throws std::invalid_argument when the gcd is
    /// not 1 or an entry is < 1.
    static NumericalSemigroup from_generators(std::span<const std::int64_t> gens);
    static NumericalSemigroup from_generators(std::initializer_list<std::int64_t> gens);

    /// Builds from a finite gapset G (0 excluded, all entries positive).
    /// Validates that N \ G is closed under addition; throws closure_error
    /// with a witness pair otherwise.
    static NumericalSemigroup from_gapset(const FiniteIntSet& gaps);

    const FiniteIntSet& gapset() const { return gapset_; }
    const std::vector<std::int64_t>& minimal_generators() const { return min_gens_; }
    std::int64_t multiplicity() const { return m_; }
    std::int64_t frobenius() const { return f_; }  // -1 for the full N
    std::int64_t conductor() const { return f_ + 1; }
    std::int64_t genus() const { return gapset_.size(); }
    std::int64_t depth() const { return q_; }

    bool contains(std::int64_t x) const {
        if (x < 0) return false;
        if (x >= conductor()) return true;
        return !gapset_.contains(x);
    }

    bool operator==(const NumericalSemigroup& o) const { return gapset_ == o.gapset_; }

private:
    NumericalSemigroup() = default;
    static NumericalSemigroup from_gap_values(const std::vector<std::int64_t>& gaps,
                                              bool validate_closure);

    FiniteIntSet gapset_;
    std::vector<std::int64_t> min_gens_;
    std::int64_t m_ = 1;
    std::int64_t f_ = -1;
    std::int64_t q_ = 0;

    friend NumericalSemigroup semigroup_from_gap_values_unchecked(std::vector<std::int64_t>);
};

/// f == 2g-1. Pre: genus >= 1 (symmetry is undefined for the full N and
/// this throws std::domain_error rather than guessing).
bool is_symmetric(const NumericalSemigroup& s);

// Trusted path for enumeration, where gapsets come from tree moves that
// preserve closure by construction.
NumericalSemigroup semigroup_from_gap_values_unchecked(std::vector<std::int64_t> gaps);

}  // namespace buchset
