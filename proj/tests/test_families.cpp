#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "buchset/families.hpp"
#include "buchset/semigroup.hpp"

using namespace buchset;

namespace {

std::vector<std::int64_t> range_plus(std::int64_t lo, std::int64_t hi,
                                     std::initializer_list<std::int64_t> extra) {
    std::vector<std::int64_t> v;
    for (std::int64_t x = lo; x <= hi; ++x) v.push_back(x);
    v.insert(v.end(), extra);
    return v;
}

}  // namespace

TEST_CASE("family name parsing") {
    CHECK(family_from_name("P2") == Family::P2);
    CHECK(family_from_name("p5") == Family::P5);
    CHECK(family_from_name("komeda") == Family::Komeda);
    CHECK(family_from_name("Komeda") == Family::Komeda);
    CHECK_THROWS_AS(family_from_name("P9"), std::invalid_argument);
    CHECK_THROWS_AS(family_from_name(""), std::invalid_argument);
}

TEST_CASE("build_family gapsets at k=1") {
    const FamilySpec p2 = build_family(Family::P2, 1);
    CHECK(p2.gapset == FiniteIntSet::from_values(range_plus(1, 20, {35, 37, 40, 41})));
    CHECK(p2.interval_lo == 2);
    CHECK(p2.interval_hi == 3);
    CHECK(p2.has_predicted_beta);

    const FamilySpec p3 = build_family(Family::P3, 1);
    CHECK(p3.gapset == FiniteIntSet::from_values(range_plus(1, 24, {43, 44, 48, 49})));
    CHECK(p3.interval_lo == 3);
    CHECK(p3.interval_hi == 4);

    const FamilySpec kom = build_family(Family::Komeda, 1);
    CHECK(kom.gapset == FiniteIntSet::from_values(range_plus(1, 74, {139, 146, 147})));
    CHECK(kom.interval_lo == 9);
    CHECK(kom.interval_hi == 11);
    CHECK(kom.has_predicted_beta);

    CHECK(!build_family(Family::P4, 1).has_predicted_beta);
    CHECK(!build_family(Family::P5, 1).has_predicted_beta);
    CHECK(!build_family(Family::P6, 1).has_predicted_beta);
}

TEST_CASE("build_family rejects bad parameters") {
    CHECK_THROWS_AS(build_family(Family::P2, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_family(Family::P2, -3), std::invalid_argument);
    CHECK_THROWS_AS(build_family(Family::P2, 100000), std::invalid_argument);
    CHECK_THROWS_AS(build_family(Family::Komeda, 31), std::invalid_argument);
}

TEST_CASE("every family member is a genuine depth-2 gapset") {
    for (const Family f : {Family::P2, Family::P3, Family::P4, Family::P5, Family::P6}) {
        for (std::int64_t k : {1, 2, 5}) {
            const FamilySpec spec = build_family(f, k);
            const NumericalSemigroup s = NumericalSemigroup::from_gapset(spec.gapset);
            CHECK(s.depth() == 2);
        }
    }
    for (std::int64_t k : {1, 2, 3}) {
        const NumericalSemigroup s =
            NumericalSemigroup::from_gapset(build_family(Family::Komeda, k).gapset);
        CHECK(s.depth() == 2);
    }
}

TEST_CASE("komeda genus and max-gap formulas, and the minimal generators at k=1") {
    for (std::int64_t k : {1, 2, 3, 4}) {
        const FamilySpec spec = build_family(Family::Komeda, k);
        CHECK(spec.gapset.size() == 46 + 27 * k + 4 * k * k);
        CHECK(spec.gapset.max() == 86 + 53 * k + 8 * k * k);
    }
    const NumericalSemigroup s =
        NumericalSemigroup::from_gapset(build_family(Family::Komeda, 1).gapset);
    std::vector<std::int64_t> expect;
    for (std::int64_t x = 75; x <= 138; ++x) expect.push_back(x);
    for (std::int64_t x = 140; x <= 145; ++x) expect.push_back(x);
    expect.push_back(148);
    expect.push_back(149);
    CHECK(s.minimal_generators() == expect);
}

TEST_CASE("reflected gapset matches the displayed shape for P2 and P3") {
    for (std::int64_t k : {1, 2, 3, 4}) {
        {
            const FamilySpec p2 = build_family(Family::P2, k);
            const std::int64_t m = 6 * k + 15;
            std::vector<std::int64_t> reflected;
            p2.gapset.for_each([&](std::int64_t g) { reflected.push_back(2 * m - 1 - g); });
            std::vector<std::int64_t> expect = {0, 1, 4, 6};
            for (std::int64_t x = m; x <= 2 * (m - 1); ++x) expect.push_back(x);
            CHECK(make_set(reflected) == make_set(expect));
        }
        {
            const FamilySpec p3 = build_family(Family::P3, k);
            const std::int64_t m = 6 * k + 19;
            std::vector<std::int64_t> reflected;
            p3.gapset.for_each([&](std::int64_t g) { reflected.push_back(2 * m - 1 - g); });
            std::vector<std::int64_t> expect = {0, 1, 5, 6};
            for (std::int64_t x = m; x <= 2 * (m - 1); ++x) expect.push_back(x);
            CHECK(make_set(reflected) == make_set(expect));
        }
    }
}

TEST_CASE("predicted_beta_value pieces") {
    const FamilySpec p2 = build_family(Family::P2, 3);
    CHECK(predicted_beta_value(p2, 2) == 1);
    CHECK(predicted_beta_value(p2, 4) == 2);
    CHECK(predicted_beta_value(p2, 5) == 2);
    CHECK(predicted_beta_value(p2, 6) == 0);
    CHECK(predicted_beta_value(p2, 8) == -12);

    const FamilySpec p3 = build_family(Family::P3, 2);
    CHECK(predicted_beta_value(p3, 2) == 0);
    CHECK(predicted_beta_value(p3, 3) == 1);
    CHECK(predicted_beta_value(p3, 5) == 4);
    CHECK(predicted_beta_value(p3, 6) == -2);  // 6k - 6n + 22
}

TEST_CASE("predicted_beta_value komeda spots") {
    const FamilySpec k1 = build_family(Family::Komeda, 1);
    CHECK(predicted_beta_value(k1, 9) == 2);   // 1+k at n = 7+2k
    CHECK(predicted_beta_value(k1, 11) == 1);  // at n = 7+4k
    CHECK(predicted_beta_value(k1, 12) == -1); // -k at n = 8+4k
    CHECK(predicted_beta_value(k1, 8) == 0);   // at n = 6+2k
    CHECK(predicted_beta_value(k1, 2) == -2);  // -1-k

    const FamilySpec k2 = build_family(Family::Komeda, 2);
    CHECK(predicted_beta_value(k2, 10) == 0);
    CHECK(predicted_beta_value(k2, 11) == 3);
    CHECK(predicted_beta_value(k2, 15) == 1);
    CHECK(predicted_beta_value(k2, 16) == -2);

    // integer-exactness of the quadratic pieces across the board
    for (std::int64_t k : {1, 2, 3, 4}) {
        const FamilySpec spec = build_family(Family::Komeda, k);
        for (std::int64_t n = 2; n <= 20 + 4 * k; ++n) CHECK_NOTHROW(predicted_beta_value(spec, n));
    }
}

TEST_CASE("predicted_beta_value errors") {
    const FamilySpec p4 = build_family(Family::P4, 1);
    CHECK_THROWS_AS(predicted_beta_value(p4, 3), std::invalid_argument);
    const FamilySpec p2 = build_family(Family::P2, 1);
    CHECK_THROWS_AS(predicted_beta_value(p2, 1), std::invalid_argument);
}

TEST_CASE("verify_family passes for all six families") {
    for (std::int64_t k = 1; k <= 10; ++k) {
        const VerificationReport rep = verify_family(build_family(Family::P2, k), 10);
        CHECK(rep.match);
        CHECK(rep.first_mismatch.empty());
    }
    for (std::int64_t k = 1; k <= 5; ++k) {
        CHECK(verify_family(build_family(Family::P3, k), 10).match);
        CHECK(verify_family(build_family(Family::P4, k), 10).match);
        CHECK(verify_family(build_family(Family::P5, k), 10).match);
        const VerificationReport p6 = verify_family(build_family(Family::P6, k), 10);
        CHECK(p6.match);
        std::vector<std::int64_t> expect;
        for (std::int64_t n = 6; n <= k + 6; ++n) expect.push_back(n);
        CHECK(p6.computed.head == expect);
    }
    for (std::int64_t k = 1; k <= 3; ++k) {
        const VerificationReport rep = verify_family(build_family(Family::Komeda, k), 5);
        CHECK(rep.match);
    }
}

TEST_CASE("verify_family reports a mismatch for a doctored prediction") {
    FamilySpec spec = build_family(Family::P2, 2);
    spec.interval_hi += 1;  // wrong on purpose
    const VerificationReport rep = verify_family(spec, 0);
    CHECK(!rep.match);
    CHECK(!rep.first_mismatch.empty());

    FamilySpec beta_tampered = build_family(Family::P2, 2);
    beta_tampered.k = 3;  // formulas now disagree with the gapset
    const VerificationReport rep2 = verify_family(beta_tampered, 5);
    CHECK(!rep2.match);
    CHECK(rep2.first_mismatch.find("beta(") != std::string::npos);

    CHECK_THROWS_AS(verify_family(build_family(Family::P2, 1), -1), std::invalid_argument);
}
