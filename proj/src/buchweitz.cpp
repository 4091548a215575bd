#include "buchset/buchweitz.hpp"

#include <algorithm>
#include <sstream>

namespace buchset {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    // b > 0
    std::int64_t q = a / b;
    if (a % b != 0 && a < 0) --q;
    return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    return -floor_div(-a, b);
}

}  // namespace

std::int64_t beta(const FiniteIntSet& a, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("beta: need n >= 1");
    if (a.empty()) return 2 * n - 1;
    if (a.size() == 1) return 1;
    const NormalizedSet ns = normalize(a);
    BaseSumsetIterator it(ns.base);
    while (it.n() < n) it.advance();
    return it.cardinality() - (2 * n - 1) * (ns.k - 1);
}

std::int64_t BetaProfile::beta_at(std::int64_t n) const {
    if (n < 1) throw std::invalid_argument("beta_at: need n >= 1");
    if (n < tail_start) return values[static_cast<std::size_t>(n - 1)];
    return tail_slope * n + tail_intercept;
}

BetaProfile beta_profile(const FiniteIntSet& a, const ProfileOptions& opts) {
    if (a.size() < 2) throw std::invalid_argument("beta_profile: need |A| >= 2");
    const NormalizedSet ns = normalize(a);
    const std::int64_t threshold = nathanson_threshold(ns);
    const std::vector<std::int64_t> elems = ns.base.values();

    BetaProfile p;
    BaseSumsetIterator it(ns.base, opts.cap_bits > 0 ? opts.cap_bits : window_cap_bits());
    for (;;) {
        p.values.push_back(it.cardinality() - (2 * it.n() - 1) * (ns.k - 1));
        // Full interval persists: with {0, a0} in the base,
        // (n+1)A0 contains [0, a0*n] + {0, a0} = [0, a0*(n+1)], so
        // |mA0| = a0*m + 1 for every m >= n.
        if (it.full_interval()) break;
        // From the threshold on, the decomposition is a theorem.
        if (it.n() >= threshold) break;
        if (opts.use_stability_certificate) {
            const auto raw = detail::extract_raw(it.window(), ns.a0 * it.n());
            const std::int64_t middle_len = (ns.a0 * it.n() - raw.d) - raw.c + 1;
            if (raw.valid && detail::decomposition_is_stable(raw, elems, ns.a0, middle_len))
                break;
        }
        it.advance();
    }
    // |nA0| = a0*n + b from here on, so beta is linear with these exact
    // coefficients (valid already at the seam n*).
    const std::int64_t b = it.cardinality() - ns.a0 * it.n();
    p.tail_slope = ns.a0 - 2 * (ns.k - 1);
    p.tail_intercept = b + ns.k - 1;
    p.tail_start = it.n() + 1;
    return p;
}

bool BuchweitzResult::contains(std::int64_t n) const {
    if (n < 2) return false;
    if (kind == Kind::Cofinite && n >= cofinite_from) return true;
    return std::binary_search(head.begin(), head.end(), n);
}

std::string BuchweitzResult::to_string() const {
    std::ostringstream os;
    if (!head.empty() || kind == Kind::Finite) {
        os << '{';
        std::size_t i = 0;
        while (i < head.size()) {
            std::size_t j = i;
            while (j + 1 < head.size() && head[j + 1] == head[j] + 1) ++j;
            if (i > 0) os << ", ";
            if (j == i)
                os << head[i];
            else if (j == i + 1)
                os << head[i] << ", " << head[j];
            else
                os << head[i] << ".." << head[j];
            i = j + 1;
        }
        os << '}';
    }
    if (kind == Kind::Cofinite) {
        if (!head.empty()) os << " u ";
        os << '[' << cofinite_from << ", inf)";
    }
    return os.str();
}

BuchweitzResult buchweitz_from_profile(const BetaProfile& p) {
    BuchweitzResult r;
    const std::int64_t nstar = p.tail_start - 1;
    for (std::int64_t n = 2; n <= nstar; ++n)
        if (p.values[static_cast<std::size_t>(n - 1)] >= 1) r.head.push_back(n);

    const std::int64_t s = p.tail_slope, t = p.tail_intercept;
    if (s > 0 || (s == 0 && t >= 1)) {
        // every tail index from here on is a member
        std::int64_t from = p.tail_start;
        if (s > 0) from = std::max(from, ceil_div(1 - t, s));
        // minimal correct cofinite_from: absorb the contiguous members
        // sitting right below it
        while (from - 1 >= 2 && p.beta_at(from - 1) >= 1) --from;
        while (!r.head.empty() && r.head.back() >= from) r.head.pop_back();
        r.kind = BuchweitzResult::Kind::Cofinite;
        r.cofinite_from = from;
    } else if (s < 0) {
        // finitely many tail members: tail_start .. floor((t-1)/(-s))
        const std::int64_t hi = floor_div(t - 1, -s);
        for (std::int64_t n = p.tail_start; n <= hi; ++n) r.head.push_back(n);
    }
    return r;
}

BuchweitzResult buchweitz_set(const FiniteIntSet& a) {
    if (a.size() <= 1) {
        BuchweitzResult r;
        r.kind = BuchweitzResult::Kind::Cofinite;
        r.cofinite_from = 2;
        return r;
    }
    return buchweitz_from_profile(beta_profile(a));
}

BuchweitzResult buchweitz_set_of_semigroup(const NumericalSemigroup& s) {
    BuchweitzResult r = buchweitz_set(s.gapset());
    if (s.genus() >= 2 && r.kind != BuchweitzResult::Kind::Finite)
        throw std::logic_error(
            "internal inconsistency: Buchweitz set of a genus >= 2 semigroup "
            "came out cofinite; the sumset engine or tail solver is broken");
    return r;
}

}  // namespace buchset
