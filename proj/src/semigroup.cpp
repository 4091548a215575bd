#include "buchset/semigroup.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace buchset {

namespace {

// The membership sieve is a dense table like the sumset windows, so it
// honors the same allocation cap.
void check_sieve_size(std::int64_t bound) {
    const std::int64_t cap = window_cap_bits();
    if (bound + 1 > cap) {
        std::ostringstream os;
        os << "membership sieve of " << bound + 1 << " entries exceeds the window cap of "
           << cap << "; raise BUCHSET_WINDOW_CAP_BITS for generators this large";
        throw window_error(os.str());
    }
}

// s is a minimal generator iff it is not the sum of two nonzero members.
// Every minimal generator is <= c+m-1 (anything larger is m + a member at
// or past the conductor); the full semigroup N needs the max() for its
// lone generator 1.
std::vector<std::int64_t> minimal_generators_of(const std::vector<char>& member,
                                                std::int64_t m, std::int64_t c) {
    std::vector<std::int64_t> gens;
    const std::int64_t bound =
        std::min<std::int64_t>(std::max(c + m - 1, m), static_cast<std::int64_t>(member.size()) - 1);
    for (std::int64_t s = m; s <= bound; ++s) {
        if (!member[static_cast<std::size_t>(s)]) continue;
        bool minimal = true;
        for (std::int64_t x = m; 2 * x <= s; ++x) {
            if (member[static_cast<std::size_t>(x)] && member[static_cast<std::size_t>(s - x)]) {
                minimal = false;
                break;
            }
        }
        if (minimal) gens.push_back(s);
    }
    return gens;
}

}  // namespace

NumericalSemigroup NumericalSemigroup::from_gap_values(const std::vector<std::int64_t>& gaps,
                                                       bool validate_closure) {
    for (std::int64_t g : gaps)
        if (g < 1) throw std::invalid_argument("gapset entries must be positive (0 is never a gap)");

    NumericalSemigroup s;
    s.gapset_ = FiniteIntSet::from_values(gaps);
    const std::int64_t f = s.gapset_.empty() ? -1 : s.gapset_.max();
    const std::int64_t c = f + 1;
    s.f_ = f;

    // membership table up to c+m-1 is enough for minimal generators; pad a
    // little so the m scan below stays in range
    const std::int64_t limit = 2 * c + 2;
    std::vector<char> member(static_cast<std::size_t>(limit + 1), 1);
    s.gapset_.for_each([&](std::int64_t g) { member[static_cast<std::size_t>(g)] = 0; });

    s.m_ = 1;
    while (!member[static_cast<std::size_t>(s.m_)]) ++s.m_;

    if (validate_closure) {
        // x, y nonzero members with x+y <= f must not land in a gap;
        // sums past f are members for free
        for (std::int64_t x = 1; 2 * x <= f; ++x) {
            if (!member[static_cast<std::size_t>(x)]) continue;
            for (std::int64_t y = x; x + y <= f; ++y) {
                if (member[static_cast<std::size_t>(y)] && !member[static_cast<std::size_t>(x + y)])
                    throw closure_error(x, y);
            }
        }
    }

    s.q_ = c == 0 ? 0 : (c + s.m_ - 1) / s.m_;
    s.min_gens_ = minimal_generators_of(member, s.m_, c);
    return s;
}

NumericalSemigroup NumericalSemigroup::from_generators(std::span<const std::int64_t> gens) {
    if (gens.empty()) throw std::invalid_argument("from_generators: empty generator list");
    std::int64_t g = 0, mn = gens[0], mx = gens[0];
    for (std::int64_t a : gens) {
        if (a < 1) throw std::invalid_argument("from_generators: generators must be >= 1");
        g = std::gcd(g, a);
        mn = std::min(mn, a);
        mx = std::max(mx, a);
    }
    if (g != 1)
        throw std::invalid_argument("from_generators: gcd is " + std::to_string(g) +
                                    ", the complement would be infinite");

    // min*max bounds the Frobenius number: every residue mod mn is hit by a
    // sum of at most mn-1 generators, each <= mx
    const std::int64_t bound = mn * mx;
    check_sieve_size(bound);
    std::vector<char> reach(static_cast<std::size_t>(bound + 1), 0);
    reach[0] = 1;
    for (std::int64_t i = 1; i <= bound; ++i) {
        for (std::int64_t a : gens) {
            if (a <= i && reach[static_cast<std::size_t>(i - a)]) {
                reach[static_cast<std::size_t>(i)] = 1;
                break;
            }
        }
    }
    std::vector<std::int64_t> gaps;
    for (std::int64_t i = 1; i <= bound; ++i)
        if (!reach[static_cast<std::size_t>(i)]) gaps.push_back(i);
    return from_gap_values(gaps, /*validate_closure=*/false);
}

NumericalSemigroup NumericalSemigroup::from_generators(std::initializer_list<std::int64_t> gens) {
    return from_generators(std::span<const std::int64_t>(gens.begin(), gens.size()));
}

NumericalSemigroup NumericalSemigroup::from_gapset(const FiniteIntSet& gaps) {
    return from_gap_values(gaps.values(), /*validate_closure=*/true);
}

NumericalSemigroup semigroup_from_gap_values_unchecked(std::vector<std::int64_t> gaps) {
    return NumericalSemigroup::from_gap_values(gaps, /*validate_closure=*/false);
}

bool is_symmetric(const NumericalSemigroup& s) {
    if (s.genus() < 1)
        throw std::domain_error("is_symmetric: undefined for the full semigroup (genus 0)");
    return s.frobenius() == 2 * s.genus() - 1;
}

}  // namespace buchset
