#include "buchset/intset.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <sstream>

namespace buchset {

namespace {

constexpr std::int64_t kDefaultWindowCap = std::int64_t{1} << 30;

std::int64_t initial_cap() {
    if (const char* env = std::getenv("BUCHSET_WINDOW_CAP_BITS")) {
        char* end = nullptr;
        const long long v = std::strtoll(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return kDefaultWindowCap;
}

std::atomic<std::int64_t>& cap_storage() {
    static std::atomic<std::int64_t> cap{initial_cap()};
    return cap;
}

void check_window(std::int64_t bits) {
    const std::int64_t cap = window_cap_bits();
    if (bits > cap) {
        std::ostringstream os;
        os << "dense window of " << bits << " bits exceeds the cap of " << cap
           << " bits; raise BUCHSET_WINDOW_CAP_BITS or set_window_cap_bits() "
              "if this allocation is intended";
        throw window_error(os.str());
    }
}

}  // namespace

std::int64_t window_cap_bits() { return cap_storage().load(std::memory_order_relaxed); }

void set_window_cap_bits(std::int64_t bits) {
    if (bits <= 0) throw std::invalid_argument("window cap must be positive");
    cap_storage().store(bits, std::memory_order_relaxed);
}

// ---------------------------------------------------------------------------
// FiniteIntSet

FiniteIntSet FiniteIntSet::from_values(std::span<const std::int64_t> values) {
    FiniteIntSet s;
    if (values.empty()) return s;
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    const std::int64_t width = *mx - *mn + 1;
    check_window(width);
    s.origin_ = *mn;
    s.bits_ = detail::BitWindow(width);
    for (std::int64_t v : values) s.bits_.set(v - s.origin_);
    s.count_ = s.bits_.popcount();
    return s;
}

FiniteIntSet FiniteIntSet::from_values(std::initializer_list<std::int64_t> values) {
    return from_values(std::span<const std::int64_t>(values.begin(), values.size()));
}

FiniteIntSet FiniteIntSet::interval(std::int64_t lo, std::int64_t hi) {
    FiniteIntSet s;
    if (hi < lo) return s;
    const std::int64_t width = hi - lo + 1;
    check_window(width);
    s.origin_ = lo;
    s.bits_ = detail::BitWindow(width);
    for (std::int64_t i = 0; i < width; ++i) s.bits_.set(i);
    s.count_ = width;
    return s;
}

FiniteIntSet FiniteIntSet::from_window(std::int64_t origin, const detail::BitWindow& w) {
    FiniteIntSet s;
    std::int64_t first = -1, last = -1;
    w.for_each_set([&](std::int64_t i) {
        if (first < 0) first = i;
        last = i;
    });
    if (first < 0) return s;
    s.origin_ = origin + first;
    s.bits_ = detail::BitWindow::slice(w, first, last - first + 1);
    s.count_ = s.bits_.popcount();
    return s;
}

std::int64_t FiniteIntSet::min() const {
    if (empty()) throw std::logic_error("min() of empty set");
    return origin_;
}

std::int64_t FiniteIntSet::max() const {
    if (empty()) throw std::logic_error("max() of empty set");
    return origin_ + bits_.width() - 1;
}

std::vector<std::int64_t> FiniteIntSet::values() const {
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(count_));
    for_each([&](std::int64_t v) { out.push_back(v); });
    return out;
}

std::string FiniteIntSet::to_string() const {
    std::ostringstream os;
    os << '{';
    std::int64_t run_lo = 0, prev = 0;
    bool open = false, first = true;
    auto flush = [&] {
        if (!open) return;
        if (!first) os << ", ";
        first = false;
        if (prev == run_lo)
            os << run_lo;
        else if (prev == run_lo + 1)
            os << run_lo << ", " << prev;
        else
            os << run_lo << ".." << prev;
        open = false;
    };
    for_each([&](std::int64_t v) {
        if (open && v == prev + 1) {
            prev = v;
            return;
        }
        flush();
        run_lo = prev = v;
        open = true;
    });
    flush();
    os << '}';
    return os.str();
}

FiniteIntSet make_set(std::span<const std::int64_t> values) {
    return FiniteIntSet::from_values(values);
}

FiniteIntSet make_set(std::initializer_list<std::int64_t> values) {
    return FiniteIntSet::from_values(values);
}

// ---------------------------------------------------------------------------
// sumset

FiniteIntSet sumset(const FiniteIntSet& a, const FiniteIntSet& b) {
    if (a.empty() || b.empty()) return {};
    const std::int64_t width = (a.max() - a.min()) + (b.max() - b.min()) + 1;
    check_window(width);
    detail::BitWindow r(width);
    // shift the wider window by each element of the smaller set
    const FiniteIntSet& small = a.size() <= b.size() ? a : b;
    const FiniteIntSet& large = a.size() <= b.size() ? b : a;
    small.window().for_each_set(
        [&](std::int64_t rel) { r.or_shifted(large.window(), rel); });
    return FiniteIntSet::from_window(a.min() + b.min(), r);
}

// ---------------------------------------------------------------------------
// normalization

NormalizedSet normalize(const FiniteIntSet& a) {
    if (a.empty()) throw std::invalid_argument("normalize: empty set");
    NormalizedSet n;
    n.offset = a.min();
    n.k = a.size();
    std::int64_t g = 0;
    a.for_each([&](std::int64_t v) { g = std::gcd(g, v - n.offset); });
    n.scale = g == 0 ? 1 : g;  // g == 0 iff singleton
    std::vector<std::int64_t> base;
    base.reserve(static_cast<std::size_t>(n.k));
    a.for_each([&](std::int64_t v) { base.push_back((v - n.offset) / n.scale); });
    n.base = FiniteIntSet::from_values(base);
    n.a0 = n.base.max();
    return n;
}

std::int64_t nathanson_threshold(const NormalizedSet& n) {
    if (n.k < 2) throw std::invalid_argument("nathanson_threshold: need k >= 2");
    const __int128 t = static_cast<__int128>(n.k - 2) * (n.a0 - 1) * n.a0;
    if (t < 1) return 1;
    if (t > std::numeric_limits<std::int64_t>::max())
        return std::numeric_limits<std::int64_t>::max();
    return static_cast<std::int64_t>(t);
}

// ---------------------------------------------------------------------------
// decomposition

namespace detail {

RawDecomposition extract_raw(const BitWindow& w, std::int64_t top) {
    RawDecomposition r;
    const std::int64_t mid = top / 2;
    if (!w.test(mid)) return r;
    r.c = w.run_start(mid);
    const std::int64_t e = w.run_end(mid);
    r.d = top - e;
    for (std::int64_t x = 0; x + 1 < r.c; ++x)
        if (w.test(x)) r.low.push_back(x);
    for (std::int64_t x = top; x >= e + 2; --x)
        if (w.test(x)) r.high.push_back(top - x);
    r.valid = true;
    return r;
}

bool decomposition_is_stable(const RawDecomposition& r, std::span<const std::int64_t> base_elems,
                             std::int64_t a0, std::int64_t middle_len) {
    if (!r.valid || middle_len < a0) return false;
    // Low side: members below c arise only as base + (members below c), so
    // the low part repeats at the next fold iff base + low adds nothing new
    // under c. With 0 in the base this is an equality check.
    {
        BitWindow lw(r.c);
        for (std::int64_t x : r.low) lw.set(x);
        BitWindow t = lw;
        for (std::int64_t a : base_elems) {
            if (a >= r.c) break;
            if (a > 0) t.or_shifted(lw, a);
        }
        if (!(t == lw)) return false;
    }
    // High side: same argument on the reflection, where the base becomes
    // a0 - base and the high offsets play the low role.
    {
        BitWindow hw(r.d);
        for (std::int64_t x : r.high) hw.set(x);
        BitWindow t = hw;
        for (auto it = base_elems.rbegin(); it != base_elems.rend(); ++it) {
            const std::int64_t ar = a0 - *it;
            if (ar >= r.d) break;
            if (ar > 0) t.or_shifted(hw, ar);
        }
        if (!(t == hw)) return false;
    }
    return true;
}

}  // namespace detail

NathansonDecomposition extract_decomposition(const NormalizedSet& ns, std::int64_t n) {
    if (ns.k < 2) throw std::invalid_argument("extract_decomposition: need k >= 2");
    if (n < 1) throw std::invalid_argument("extract_decomposition: need n >= 1");
    BaseSumsetIterator it(ns.base);
    while (it.n() < n) it.advance();
    const detail::RawDecomposition raw = detail::extract_raw(it.window(), ns.a0 * n);
    if (!raw.valid) {
        std::ostringstream os;
        os << "no midpoint-anchored decomposition of " << n << "*A0 (midpoint "
           << ns.a0 * n / 2 << " is not a member)";
        throw decomposition_error(os.str());
    }
    NathansonDecomposition out;
    out.n = n;
    out.c = raw.c;
    out.d = raw.d;
    out.low = FiniteIntSet::from_values(raw.low);
    out.high = FiniteIntSet::from_values(raw.high);
    return out;
}

// ---------------------------------------------------------------------------
// iteration

BaseSumsetIterator::BaseSumsetIterator(const FiniteIntSet& base)
    : BaseSumsetIterator(base, window_cap_bits()) {}

BaseSumsetIterator::BaseSumsetIterator(const FiniteIntSet& base, std::int64_t cap_bits)
    : cap_bits_(cap_bits) {
    if (base.empty() || base.min() != 0)
        throw std::invalid_argument("BaseSumsetIterator: base must contain 0 as its minimum");
    elems_ = base.values();
    a0_ = base.max();
    cur_ = base.window();
    card_ = base.size();
}

void BaseSumsetIterator::advance() {
    const std::int64_t next_n = n_ + 1;
    if (a0_ > 0 && next_n > (cap_bits_ - 1) / a0_) {
        std::ostringstream os;
        os << "sumset window for n=" << next_n << " needs " << "a0*n+1 = "
           << a0_ << "*" << next_n << "+1 bits, over the cap of " << cap_bits_
           << " bits; raise BUCHSET_WINDOW_CAP_BITS or set_window_cap_bits() "
              "to iterate further";
        throw window_error(os.str());
    }
    detail::BitWindow next(a0_ * next_n + 1);
    for (std::int64_t e : elems_) next.or_shifted(cur_, e);
    cur_ = std::move(next);
    card_ = cur_.popcount();
    n_ = next_n;
}

SumsetSequence::SumsetSequence(const FiniteIntSet& a, std::int64_t n_max)
    : norm_(normalize(a)), iter_(norm_.base), n_max_(n_max) {
    if (n_max < 1) throw std::invalid_argument("iterated_sumsets: need n_max >= 1");
}

bool SumsetSequence::next() {
    if (produced_ == n_max_) return false;
    if (produced_ > 0) iter_.advance();
    ++produced_;
    if (norm_.scale == 1) {
        current_ = FiniteIntSet::from_window(produced_ * norm_.offset, iter_.window());
    } else {
        std::vector<std::int64_t> vals;
        vals.reserve(static_cast<std::size_t>(iter_.cardinality()));
        iter_.window().for_each_set([&](std::int64_t x) {
            vals.push_back(x * norm_.scale + produced_ * norm_.offset);
        });
        current_ = FiniteIntSet::from_values(vals);
    }
    return true;
}

}  // namespace buchset
