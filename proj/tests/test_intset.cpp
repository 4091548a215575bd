#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "buchset/intset.hpp"
#include "oracles.hpp"

using namespace buchset;

namespace {

// Restores the global window cap on scope exit.
struct CapGuard {
    std::int64_t saved = window_cap_bits();
    ~CapGuard() { set_window_cap_bits(saved); }
};

FiniteIntSet random_set(std::mt19937& rng, int max_size, std::int64_t lo, std::int64_t hi) {
    std::uniform_int_distribution<std::int64_t> val(lo, hi);
    std::uniform_int_distribution<int> size(1, max_size);
    std::vector<std::int64_t> vals;
    const int n = size(rng);
    for (int i = 0; i < n; ++i) vals.push_back(val(rng));
    return make_set(vals);
}

}  // namespace

TEST_CASE("make_set dedups and sorts") {
    const FiniteIntSet a = make_set({1, 2, 4, 5, 8, 11});
    CHECK(a.size() == 6);
    CHECK(a.min() == 1);
    CHECK(a.max() == 11);
    CHECK(a.values() == std::vector<std::int64_t>{1, 2, 4, 5, 8, 11});

    CHECK(make_set({}).empty());
    CHECK(make_set({}).size() == 0);

    const FiniteIntSet b = make_set({3, 3, 3});
    CHECK(b.size() == 1);
    CHECK(b.values() == std::vector<std::int64_t>{3});
}

TEST_CASE("make_set handles negatives and duplicates from unsorted input") {
    const FiniteIntSet a = make_set({7, -3, 0, 7, -3});
    CHECK(a.values() == std::vector<std::int64_t>{-3, 0, 7});
    CHECK(a.contains(-3));
    CHECK(!a.contains(-2));
    CHECK(a.to_string() == "{-3, 0, 7}");
}

TEST_CASE("interval constructor and run rendering") {
    const FiniteIntSet a = FiniteIntSet::interval(2, 6);
    CHECK(a.size() == 5);
    CHECK(a.to_string() == "{2..6}");
    CHECK(FiniteIntSet::interval(4, 3).empty());
}

TEST_CASE("normalize: gapset of <2,b> has scale 2") {
    // G = {1, 3, ..., b-2}; base is the interval [0, (b-3)/2]
    for (std::int64_t b : {5, 9, 15}) {
        std::vector<std::int64_t> odds;
        for (std::int64_t x = 1; x <= b - 2; x += 2) odds.push_back(x);
        const NormalizedSet n = normalize(make_set(odds));
        CHECK(n.offset == 1);
        CHECK(n.scale == 2);
        CHECK(n.base == FiniteIntSet::interval(0, (b - 3) / 2));
        CHECK(n.a0 == (b - 3) / 2);
        CHECK(n.k == (b - 1) / 2);
    }
}

TEST_CASE("normalize: gcd-1 set and singleton") {
    const NormalizedSet n = normalize(make_set({1, 2, 4, 5, 8, 11}));
    CHECK(n.base == make_set({0, 1, 3, 4, 7, 10}));
    CHECK(n.scale == 1);
    CHECK(n.offset == 1);

    const NormalizedSet s = normalize(make_set({7}));
    CHECK(s.base == make_set({0}));
    CHECK(s.scale == 1);
    CHECK(s.offset == 7);
    CHECK(s.a0 == 0);
    CHECK(s.k == 1);

    CHECK_THROWS_AS(normalize(FiniteIntSet{}), std::invalid_argument);
}

TEST_CASE("sumset basics") {
    const FiniteIntSet g37 = make_set({1, 2, 4, 5, 8, 11});
    const FiniteIntSet twice = sumset(g37, g37);
    CHECK(twice.size() == 15);
    // beta(2) = |2G| - 3*(|G|-1) = 0 for this symmetric gapset
    CHECK(twice.size() - 3 * (g37.size() - 1) == 0);
    CHECK(twice == make_set({2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 15, 16, 19, 22}));

    CHECK(sumset(g37, FiniteIntSet{}).empty());
    CHECK(sumset(FiniteIntSet{}, FiniteIntSet{}).empty());
    CHECK(sumset(make_set({0}), g37) == g37);
}

TEST_CASE("sumset min/max law on random sets, incl. negatives") {
    std::mt19937 rng(7101);
    for (int t = 0; t < 200; ++t) {
        const FiniteIntSet a = random_set(rng, 8, -25, 25);
        const FiniteIntSet b = random_set(rng, 8, -25, 25);
        const FiniteIntSet s = sumset(a, b);
        REQUIRE(!s.empty());
        CHECK(s.min() == a.min() + b.min());
        CHECK(s.max() == a.max() + b.max());
    }
}

TEST_CASE("iterated sumsets match the worked examples") {
    // genus-16 counterexample gapset: 2G = [2,50] minus {39, 41, 47}
    std::vector<std::int64_t> g16;
    for (std::int64_t x = 1; x <= 12; ++x) g16.push_back(x);
    for (std::int64_t x : {19, 21, 24, 25}) g16.push_back(x);
    SumsetSequence seq(make_set(g16), 2);
    REQUIRE(seq.next());
    CHECK(seq.current() == make_set(g16));
    REQUIRE(seq.next());
    CHECK(seq.current().size() == 46);
    std::vector<std::int64_t> expect;
    for (std::int64_t x = 2; x <= 50; ++x)
        if (x != 39 && x != 41 && x != 47) expect.push_back(x);
    CHECK(seq.current() == make_set(expect));
    CHECK(!seq.next());
}

TEST_CASE("iterated sumsets: singleton stays put") {
    SumsetSequence seq(make_set({0}), 5);
    while (seq.next()) CHECK(seq.current() == make_set({0}));

    SumsetSequence shifted(make_set({4}), 3);
    std::vector<std::int64_t> got;
    while (shifted.next()) got.push_back(shifted.current().min());
    CHECK(got == std::vector<std::int64_t>{4, 8, 12});
}

TEST_CASE("iterated sumsets: interval family member at m=21") {
    // A = {0,1,4,6} u [21,40]: 2A = [0,2] u [4,8] u {10,12} u [21,80]
    std::vector<std::int64_t> a = {0, 1, 4, 6};
    for (std::int64_t x = 21; x <= 40; ++x) a.push_back(x);
    SumsetSequence seq(make_set(a), 2);
    REQUIRE(seq.next());
    REQUIRE(seq.next());
    std::vector<std::int64_t> expect = {0, 1, 2, 4, 5, 6, 7, 8, 10, 12};
    for (std::int64_t x = 21; x <= 80; ++x) expect.push_back(x);
    CHECK(seq.current() == make_set(expect));
}

TEST_CASE("iterated sumsets are lazy") {
    // a huge n_max must not cost anything until terms are pulled
    SumsetSequence seq(make_set({0, 1, 7}), 1000000000);
    REQUIRE(seq.next());
    REQUIRE(seq.next());
    CHECK(seq.n() == 2);
    CHECK(seq.current().max() == 14);

    CHECK_THROWS_AS(iterated_sumsets(FiniteIntSet{}, 3), std::invalid_argument);
    CHECK_THROWS_AS(iterated_sumsets(make_set({1, 2}), 0), std::invalid_argument);
}

TEST_CASE("growth is exactly a0 per step from the threshold on") {
    for (const auto& vals : std::vector<std::vector<std::int64_t>>{
             {0, 3, 5}, {0, 2, 3, 7}, {0, 4, 9}, {0, 5, 7, 11}}) {
        const NormalizedSet norm = normalize(make_set(vals));
        const std::int64_t thr = nathanson_threshold(norm);
        BaseSumsetIterator it(norm.base);
        while (it.n() < thr) it.advance();
        std::int64_t prev = it.cardinality();
        for (int s = 0; s < 5; ++s) {
            it.advance();
            CHECK(it.cardinality() - prev == norm.a0);
            prev = it.cardinality();
        }
    }
}

TEST_CASE("engine equals naive n-way enumeration") {
    std::mt19937 rng(20260810);
    std::uniform_int_distribution<std::int64_t> val(0, 20);
    std::uniform_int_distribution<int> size(1, 8);
    std::uniform_int_distribution<int> nmax(1, 6);
    for (int t = 0; t < 120; ++t) {
        std::vector<std::int64_t> vals;
        const int n = size(rng);
        for (int i = 0; i < n; ++i) vals.push_back(val(rng));
        const FiniteIntSet a = make_set(vals);
        const int up = nmax(rng);
        SumsetSequence seq(a, up);
        std::int64_t fold = 0;
        while (seq.next()) {
            ++fold;
            CHECK(seq.current().values() == testing::naive_nfold_sumset(a.values(), fold));
        }
        CHECK(fold == up);
    }
}

TEST_CASE("monotone chain and affine cardinality invariance") {
    std::mt19937 rng(99);
    for (int t = 0; t < 60; ++t) {
        FiniteIntSet a = random_set(rng, 6, -12, 12);
        // force 0 in for the chain property
        std::vector<std::int64_t> vals = a.values();
        vals.push_back(0);
        a = make_set(vals);
        SumsetSequence seq(a, 5);
        FiniteIntSet prev;
        const NormalizedSet norm = normalize(a);
        BaseSumsetIterator base_it(norm.base);
        while (seq.next()) {
            if (seq.n() > 1) {
                prev.for_each([&](std::int64_t v) { CHECK(seq.current().contains(v)); });
                base_it.advance();
            }
            // |nA| = |n*base|
            CHECK(seq.current().size() == base_it.cardinality());
            prev = seq.current();
        }
    }
}

TEST_CASE("nathanson_threshold formula") {
    NormalizedSet n;
    n.base = make_set({0, 24});  // only k and a0 matter here
    n.k = 16;
    n.a0 = 24;
    CHECK(nathanson_threshold(n) == 7728);
    n.k = 2;
    CHECK(nathanson_threshold(n) == 1);
    n.k = 3;
    n.a0 = 5;
    CHECK(nathanson_threshold(n) == 20);
    n.k = 1;
    CHECK_THROWS_AS(nathanson_threshold(n), std::invalid_argument);
}

TEST_CASE("extract_decomposition: dense base gives the full interval") {
    const NormalizedSet n = normalize(make_set({0, 1}));
    for (std::int64_t fold : {1, 2, 5, 30}) {
        const NathansonDecomposition d = extract_decomposition(n, fold);
        CHECK(d.c == 0);
        CHECK(d.d == 0);
        CHECK(d.low.empty());
        CHECK(d.high.empty());
    }
}

TEST_CASE("extract_decomposition: moving low pattern of the m=21 member") {
    // 3A = [0,14] u {16,18} u [21,120]: run start c = 21, gaps at 15 and 17
    std::vector<std::int64_t> a = {0, 1, 4, 6};
    for (std::int64_t x = 21; x <= 40; ++x) a.push_back(x);
    const NormalizedSet n = normalize(make_set(a));
    const NathansonDecomposition d = extract_decomposition(n, 3);
    CHECK(d.c == 21);
    CHECK(d.d == 0);
    CHECK(d.high.empty());
    std::vector<std::int64_t> low;
    for (std::int64_t x = 0; x <= 14; ++x) low.push_back(x);
    low.push_back(16);
    low.push_back(18);
    CHECK(d.low == make_set(low));
}

TEST_CASE("extract_decomposition: midpoint gap is an error at tiny n") {
    const NormalizedSet n = normalize(make_set({0, 3, 5}));
    CHECK_THROWS_AS(extract_decomposition(n, 1), decomposition_error);
    // ... but fine from the threshold on
    CHECK_NOTHROW(extract_decomposition(n, nathanson_threshold(n)));
}

TEST_CASE("decomposition is stable at and after the threshold") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<std::int64_t> val(1, 10);
    std::uniform_int_distribution<int> size(2, 5);
    for (int t = 0; t < 25; ++t) {
        std::vector<std::int64_t> vals = {0};
        const int n = size(rng);
        for (int i = 0; i < n; ++i) vals.push_back(val(rng));
        const NormalizedSet norm = normalize(make_set(vals));
        if (norm.k < 2) continue;
        const std::int64_t thr = nathanson_threshold(norm);
        const NathansonDecomposition d1 = extract_decomposition(norm, thr);
        const NathansonDecomposition d2 = extract_decomposition(norm, thr + 1);
        CHECK(d1.c == d2.c);
        CHECK(d1.d == d2.d);
        CHECK(d1.low == d2.low);
        CHECK(d1.high == d2.high);
    }
}

TEST_CASE("decomposition identity: parts reassemble n*A0") {
    const std::vector<std::int64_t> vals = {0, 2, 3, 7};
    const NormalizedSet norm = normalize(make_set(vals));
    const std::int64_t thr = nathanson_threshold(norm);
    const NathansonDecomposition d = extract_decomposition(norm, thr);
    // reassemble the three parts and compare with the engine's n*A0
    // (naive enumeration is hopeless at n = threshold)
    std::vector<std::int64_t> rebuilt = d.low.values();
    for (std::int64_t x = d.c; x <= norm.a0 * thr - d.d; ++x) rebuilt.push_back(x);
    d.high.for_each([&](std::int64_t off) { rebuilt.push_back(norm.a0 * thr - off); });
    SumsetSequence seq(make_set(vals), thr);
    FiniteIntSet last;
    while (seq.next()) last = seq.current();
    CHECK(make_set(rebuilt) == last);
    // low and high stay inside their prescribed boxes
    if (!d.low.empty()) CHECK(d.low.max() <= d.c - 2);
    if (!d.high.empty()) CHECK(d.high.max() <= d.d - 2);
}

TEST_CASE("window cap guards construction and iteration") {
    CapGuard guard;
    set_window_cap_bits(1000);
    CHECK_THROWS_AS(make_set({0, 5000}), window_error);
    // iteration of {0,3,5} wants 11 bits at n=2; an 8-bit cap trips first
    set_window_cap_bits(8);
    BaseSumsetIterator it(make_set({0, 3, 5}));
    CHECK_THROWS_AS(it.advance(), window_error);
}
