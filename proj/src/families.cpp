#include "buchset/families.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "buchset/semigroup.hpp"

namespace buchset {

namespace {

constexpr std::int64_t kIntervalFamilyMaxK = 300;
constexpr std::int64_t kKomedaMaxK = 30;

std::vector<std::int64_t> depth_two_gapset(std::int64_t m,
                                           std::initializer_list<std::int64_t> top) {
    std::vector<std::int64_t> gaps;
    gaps.reserve(static_cast<std::size_t>(m - 1) + top.size());
    for (std::int64_t x = 1; x < m; ++x) gaps.push_back(x);
    for (std::int64_t x : top) gaps.push_back(x);
    return gaps;
}

// beta doubled, for the quadratic pieces
std::int64_t halve_exact(std::int64_t twice) {
    if (twice % 2 != 0)
        throw std::logic_error("komeda beta formula produced a non-integer value");
    return twice / 2;
}

}  // namespace

Family family_from_name(std::string_view name) {
    std::string low(name);
    std::transform(low.begin(), low.end(), low.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (low == "p2") return Family::P2;
    if (low == "p3") return Family::P3;
    if (low == "p4") return Family::P4;
    if (low == "p5") return Family::P5;
    if (low == "p6") return Family::P6;
    if (low == "komeda") return Family::Komeda;
    throw std::invalid_argument("unknown family '" + std::string(name) +
                                "' (expected P2..P6 or komeda)");
}

std::string family_name(Family f) {
    switch (f) {
        case Family::P2: return "P2";
        case Family::P3: return "P3";
        case Family::P4: return "P4";
        case Family::P5: return "P5";
        case Family::P6: return "P6";
        case Family::Komeda: return "komeda";
    }
    return "?";
}

FamilySpec build_family(Family f, std::int64_t k) {
    if (k < 1) throw std::invalid_argument("build_family: need k >= 1");
    const std::int64_t ceiling = f == Family::Komeda ? kKomedaMaxK : kIntervalFamilyMaxK;
    if (k > ceiling)
        throw std::invalid_argument("build_family: k = " + std::to_string(k) + " exceeds the " +
                                    family_name(f) + " ceiling of " + std::to_string(ceiling));

    FamilySpec spec;
    spec.family = f;
    spec.k = k;
    std::vector<std::int64_t> gaps;
    switch (f) {
        case Family::P2: {
            const std::int64_t m = 6 * k + 15;
            gaps = depth_two_gapset(m, {2 * m - 7, 2 * m - 5, 2 * m - 2, 2 * m - 1});
            spec.interval_lo = 2;
            spec.interval_hi = k + 2;
            spec.has_predicted_beta = true;
            break;
        }
        case Family::P3: {
            const std::int64_t m = 6 * k + 19;
            gaps = depth_two_gapset(m, {2 * m - 7, 2 * m - 6, 2 * m - 2, 2 * m - 1});
            spec.interval_lo = 3;
            spec.interval_hi = k + 3;
            spec.has_predicted_beta = true;
            break;
        }
        case Family::P4: {
            const std::int64_t m = 4 * k + 18;
            gaps = depth_two_gapset(m, {2 * m - 6, 2 * m - 2, 2 * m - 1});
            spec.interval_lo = 4;
            spec.interval_hi = k + 4;
            break;
        }
        case Family::P5: {
            const std::int64_t m = 7 * k + 37;
            gaps = depth_two_gapset(m, {2 * m - 10, 2 * m - 4, 2 * m - 3, 2 * m - 2});
            spec.interval_lo = 5;
            spec.interval_hi = k + 5;
            break;
        }
        case Family::P6: {
            const std::int64_t m = 5 * k + 50;
            gaps = depth_two_gapset(m, {2 * m - 10, 2 * m - 9, 2 * m - 2});
            spec.interval_lo = 6;
            spec.interval_hi = k + 6;
            break;
        }
        case Family::Komeda: {
            const std::int64_t q = 4 * k * k;  // 4k^2
            gaps = depth_two_gapset(43 + 27 * k + q + 1,
                                    {80 + 51 * k + 2 * q, 85 + 53 * k + 2 * q, 86 + 53 * k + 2 * q});
            spec.interval_lo = 7 + 2 * k;
            spec.interval_hi = 7 + 4 * k;
            spec.has_predicted_beta = true;
            break;
        }
    }
    spec.gapset = FiniteIntSet::from_values(gaps);
    // every family gapset must be a genuine gapset
    (void)NumericalSemigroup::from_gapset(spec.gapset);
    return spec;
}

std::int64_t predicted_beta_value(const FamilySpec& spec, std::int64_t n) {
    if (n < 2) throw std::invalid_argument("predicted_beta_value: need n >= 2");
    if (!spec.has_predicted_beta)
        throw std::invalid_argument("family " + family_name(spec.family) +
                                    " has no closed-form beta");
    const std::int64_t k = spec.k;
    switch (spec.family) {
        case Family::P2:
            if (n == 2) return 1;
            if (n <= k + 2) return 2;
            return -6 * (n - k - 3);
        case Family::P3:
            if (n == 2) return 0;
            if (n == 3) return 1;
            if (n <= k + 3) return 4;
            return 6 * k - 6 * n + 22;
        case Family::Komeda:
            if (n < 6 + 2 * k)
                return halve_exact(n * n - (7 + 2 * k) * n + (8 + 2 * k));
            if (n == 6 + 2 * k) return 0;
            if (n <= 11 + 4 * k)
                return halve_exact(-n * n + (6 * k + 13) * n - (40 + 38 * k + 8 * k * k));
            return (4 * k * k + 27 * k + 46) - (k + 5) * n;
        default:
            break;
    }
    throw std::logic_error("unreachable");
}

VerificationReport verify_family(const FamilySpec& spec, std::int64_t n_extra) {
    if (n_extra < 0) throw std::invalid_argument("verify_family: need n_extra >= 0");
    VerificationReport rep;
    rep.family = spec.family;
    rep.k = spec.k;
    rep.predicted_lo = spec.interval_lo;
    rep.predicted_hi = spec.interval_hi;

    const BetaProfile profile = beta_profile(spec.gapset);
    rep.computed = buchweitz_from_profile(profile);
    rep.match = true;

    if (rep.computed.kind != BuchweitzResult::Kind::Finite) {
        rep.match = false;
        rep.first_mismatch = "computed Buchweitz set is cofinite";
        return rep;
    }
    std::vector<std::int64_t> predicted;
    for (std::int64_t n = spec.interval_lo; n <= spec.interval_hi; ++n) predicted.push_back(n);
    if (rep.computed.head != predicted) {
        rep.match = false;
        std::ostringstream os;
        os << "Buch = " << rep.computed.to_string() << ", predicted {" << spec.interval_lo
           << ".." << spec.interval_hi << "}";
        rep.first_mismatch = os.str();
        return rep;
    }
    if (spec.has_predicted_beta) {
        for (std::int64_t n = 2; n <= spec.interval_hi + n_extra; ++n) {
            const std::int64_t got = profile.beta_at(n);
            const std::int64_t want = predicted_beta_value(spec, n);
            if (got != want) {
                rep.match = false;
                std::ostringstream os;
                os << "beta(" << n << ") = " << got << ", predicted " << want;
                rep.first_mismatch = os.str();
                return rep;
            }
        }
    }
    return rep;
}

}  // namespace buchset
