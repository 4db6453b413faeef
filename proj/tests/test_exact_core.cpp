#include <random>

#include "doctest.h"

#include "flatspot/exact_core.hpp"

using namespace flatspot;

TEST_SUITE_BEGIN("exact_core");

TEST_CASE("RotationFraction validates its invariants") {
    CHECK_NOTHROW(RotationFraction(1, 2));
    CHECK_NOTHROW(RotationFraction(4, 5));
    CHECK_THROWS_AS(RotationFraction(2, 4), std::invalid_argument);
    CHECK_THROWS_AS(RotationFraction(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(RotationFraction(3, 3), std::invalid_argument);
    CHECK_THROWS_AS(RotationFraction(1, 1), std::invalid_argument);
}

TEST_CASE("farey_enumerate lists reduced fractions ordered by (q, p)") {
    const auto f2 = farey_enumerate(2);
    REQUIRE(f2.size() == 1);
    CHECK(f2[0] == RotationFraction(1, 2));

    const auto f3 = farey_enumerate(3);
    REQUIRE(f3.size() == 3);
    CHECK(f3[0] == RotationFraction(1, 2));
    CHECK(f3[1] == RotationFraction(1, 3));
    CHECK(f3[2] == RotationFraction(2, 3));

    const auto f5 = farey_enumerate(5);
    CHECK(f5.size() == 9);  // the nine q <= 5 rows

    CHECK_THROWS_AS(farey_enumerate(1), std::invalid_argument);
    CHECK_THROWS_AS(farey_enumerate(enumeration_cap() + 1), capacity_error);
}

TEST_CASE("upper_string matches the table itineraries") {
    CHECK(upper_string(RotationFraction(1, 2)).str() == "10");
    CHECK(upper_string(RotationFraction(1, 3)).str() == "010");
    CHECK(upper_string(RotationFraction(2, 3)).str() == "110");
    CHECK(upper_string(RotationFraction(2, 5)).str() == "01010");
    CHECK(upper_string(RotationFraction(3, 4)).str() == "1110");
}

TEST_CASE("upper_string has p ones and a trailing zero") {
    for (const auto& r : farey_enumerate(30)) {
        const BitString s = upper_string(r);
        CHECK(s.size() == r.q);
        CHECK(s.ones() == r.p);
        CHECK(s.bit(r.q) == 0);
    }
}

TEST_CASE("t_of gives the dyadic parameter") {
    CHECK(t_of(RotationFraction(1, 2)) == Rational(1, 2));
    CHECK(t_of(RotationFraction(3, 4)) == Rational(7, 8));
    CHECK(t_of(RotationFraction(2, 5)) == Rational(5, 16));
    for (const auto& r : farey_enumerate(20)) {
        const Rational t = t_of(r);
        CHECK(t > Rational(0));
        CHECK(t < Rational(1));
        CHECK((t * Rational::pow2(r.q)).is_integer());
    }
}

TEST_CASE("interval_I endpoints and width") {
    const Interval i12 = interval_I(RotationFraction(1, 2));
    CHECK(i12.lo == Rational(1, 3));
    CHECK(i12.hi == Rational(2, 3));
    const Interval i14 = interval_I(RotationFraction(1, 4));
    CHECK(i14.lo == Rational(1, 15));
    CHECK(i14.hi == Rational(2, 15));
    const Interval i45 = interval_I(RotationFraction(4, 5));
    CHECK(i45.lo == Rational(29, 31));
    CHECK(i45.hi == Rational(30, 31));
    for (const auto& r : farey_enumerate(30))
        CHECK(interval_I(r).width() == Rational(1) / (Rational::pow2(r.q) - Rational(1)));
}

TEST_CASE("sum_frac_parts closed form") {
    CHECK(sum_frac_parts(Rational(5, 16), 5) == Rational(27, 16));
    CHECK(sum_frac_parts(Rational(1, 2), 2) == Rational(1, 2));
    // single-bit parameters: sum over i = 0..j-1 equals 1 - 2^-j
    for (int j = 1; j <= 20; ++j) {
        const Rational t = Rational::pow2(-j);
        CHECK(sum_frac_parts(t, j) == Rational(1) - t);
    }
    CHECK_THROWS_AS(sum_frac_parts(Rational(1, 3), 4), std::invalid_argument);
    CHECK_THROWS_AS(sum_frac_parts(Rational(5, 16), 3), std::invalid_argument);
    CHECK_THROWS_AS(sum_frac_parts(Rational(3, 2), 4), std::invalid_argument);
}

TEST_CASE("sum_frac_parts agrees with brute force on random dyadics") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 1000; ++trial) {
        const int q = 1 + static_cast<int>(rng() % 60);
        mpz_class num = 0;
        for (int b = 0; b < q; ++b) {
            num <<= 1;
            num += static_cast<long>(rng() & 1);
        }
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(q));
        const Rational t(num, den);

        Rational brute;
        Rational x = t;
        for (int i = 0; i < q; ++i) {
            brute += x;
            x = (x + x).frac();
        }
        CHECK(sum_frac_parts(t, q) == brute);

        mpz_class brute_floor = 0;
        Rational pow(1);
        for (int i = 0; i < q; ++i) {
            brute_floor += (t * pow).floor();
            pow *= Rational(2);
        }
        CHECK(sum_floor_parts(t, q) == brute_floor);
    }
}

TEST_CASE("intervals of distinct fractions have disjoint interiors") {
    auto all = farey_enumerate(18);
    std::vector<Interval> ivs;
    ivs.reserve(all.size());
    for (const auto& r : all) ivs.push_back(interval_I(r));
    std::sort(ivs.begin(), ivs.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (size_t i = 0; i + 1 < ivs.size(); ++i) CHECK(ivs[i].hi <= ivs[i + 1].lo);
}

TEST_SUITE_END();
