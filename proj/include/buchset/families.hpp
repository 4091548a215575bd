#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "buchset/buchweitz.hpp"
#include "buchset/intset.hpp"

namespace buchset {

/// Parametric gapset families whose Buchweitz sets are prescribed
/// integer intervals. P2..P6 realize [lo, k+lo] for lo = 2..6; Komeda
/// realizes [7+2k, 7+4k].
enum class Family { P2, P3, P4, P5, P6, Komeda };

/// Accepts "P2".."P6" (case-insensitive) and "komeda".
Family family_from_name(std::string_view name);
std::string family_name(Family f);

struct FamilySpec {
    Family family = Family::P2;
    std::int64_t k = 1;
    FiniteIntSet gapset;
    std::int64_t interval_lo = 0;  ///< predicted Buchweitz interval
    std::int64_t interval_hi = 0;
    bool has_predicted_beta = false;  ///< true for P2, P3, Komeda
};

/// Builds the k-th member. Pre: k >= 1 and k within the family ceiling
/// (P2..P6: 300, Komeda: 30 — keeps verification in seconds and windows
/// far below the cap). The gapset is validated on construction.
FamilySpec build_family(Family f, std::int64_t k);

/// Closed-form beta for families that have one (P2, P3, Komeda).
/// Komeda's quadratic pieces are evaluated in exact integers over 2*beta.
/// Pre: n >= 2.
std::int64_t predicted_beta_value(const FamilySpec& spec, std::int64_t n);

struct VerificationReport {
    Family family = Family::P2;
    std::int64_t k = 0;
    std::int64_t predicted_lo = 0;
    std::int64_t predicted_hi = 0;
    BuchweitzResult computed;
    bool match = false;
    std::string first_mismatch;  ///< empty when match
};

/// Computes the true Buchweitz set of the family gapset and checks it
/// equals the predicted interval; where a closed form exists, also checks
/// beta(n) for every 2 <= n <= interval_hi + n_extra. Mismatches are
/// report content, not errors. Pre: n_extra >= 0.
VerificationReport verify_family(const FamilySpec& spec, std::int64_t n_extra);

}  // namespace buchset
