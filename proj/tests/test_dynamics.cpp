#include "doctest.h"

#include "flatspot/dynamics.hpp"

using namespace flatspot;
namespace dyn = flatspot::dynamics;

TEST_SUITE_BEGIN("dynamics");

TEST_CASE("step branch selection, rational backend") {
    CHECK(dyn::step(Rational(1, 2), Rational(1, 2)) == Rational(0));
    CHECK(dyn::step(Rational(1, 3), Rational(9, 10)) == Rational(1, 3));
    for (long d = 1; d <= 9; ++d) {
        const Rational t(d, 10);
        CHECK(dyn::step(t, t / Rational(2)) == t);  // left boundary included
        CHECK(dyn::step(t, (Rational(1) + t) / Rational(2)) == t);
    }
    CHECK(dyn::step(Rational(1, 3), Rational(2, 5)) == Rational(4, 5));
    CHECK_THROWS_AS(dyn::step(Rational(1, 2), Rational(1)), std::domain_error);
    CHECK_THROWS_AS(dyn::step(Rational(1, 2), Rational(-1, 10)), std::domain_error);
}

TEST_CASE("step double backend matches the rational backend on grid points") {
    for (uint64_t mt : {0ull, 1ull, 77ull, (1ull << 52) + 3, (1ull << 53) - 1}) {
        for (uint64_t mx : {0ull, 5ull, (1ull << 51) | 1234, (1ull << 53) - 7}) {
            const double t = static_cast<double>(mt) * 0x1.0p-53;
            const double x = static_cast<double>(mx) * 0x1.0p-53;
            const Rational tr = Rational::from_double(t);
            const Rational xr = Rational::from_double(x);
            CHECK(Rational::from_double(dyn::step(t, x)) == dyn::step(tr, xr));
            CHECK(dyn::in_flat_spot(t, x) == dyn::in_flat_spot(tr, xr));
        }
    }
}

TEST_CASE("deviation_sum examples") {
    CHECK(dyn::deviation_sum(Rational(1, 2), Rational(1, 2), 2) == Rational(-1, 2));
    CHECK(dyn::deviation_sum(Rational(1, 2), Rational(1, 2), 4) == Rational(-1));
    CHECK(dyn::deviation_sum(Rational(1, 3), Rational(9, 10), 1) == Rational(2, 5));
    CHECK(dyn::deviation_sum(Rational(2, 7), Rational(3, 10), 1) == Rational(-1, 5));
    // orbit 1/2, 0, 1/2, 0, ...: n = 1000 gives exactly -250
    CHECK(dyn::deviation_sum(Rational(1, 2), Rational(1, 2), 1000) == Rational(-250));
}

TEST_CASE("entry_time") {
    CHECK(dyn::entry_time(Rational(1, 2), Rational(1, 2), 100) == 1);
    CHECK(dyn::entry_time(Rational(1, 3), Rational(9, 10), 100) == 0);
    // unstable period-2 orbit {1/3, 2/3} never meets the flat spot of t=1/2
    CHECK(!dyn::entry_time(Rational(1, 2), Rational(1, 3), 100));
    // a double, being dyadic, always drains into the flat spot eventually
    CHECK(dyn::entry_time(0.5, 1.0 / 3.0, 100).has_value());
}

TEST_CASE("stable_orbit") {
    const auto o12 = dyn::stable_orbit(RotationFraction(1, 2), Rational(2, 5));
    REQUIRE(o12.size() == 2);
    CHECK(o12[0] == Rational(2, 5));
    CHECK(o12[1] == Rational(4, 5));

    const auto o13 = dyn::stable_orbit(RotationFraction(1, 3), Rational(3, 14));
    REQUIRE(o13.size() == 3);
    CHECK(o13[0] == Rational(3, 14));
    CHECK(o13[1] == Rational(3, 7));
    CHECK(o13[2] == Rational(6, 7));

    const auto o23 = dyn::stable_orbit(RotationFraction(2, 3), Rational(11, 14));
    REQUIRE(o23.size() == 3);
    CHECK(o23[0] == Rational(11, 14));
    CHECK(o23[1] == Rational(4, 7));
    CHECK(o23[2] == Rational(1, 7));

    // applying the map to the last point closes the cycle
    for (const auto& r : farey_enumerate(8)) {
        const Interval I = interval_I(r);
        const Rational t = (I.lo + I.hi) / Rational(2);
        const auto orbit = dyn::stable_orbit(r, t);
        CHECK(dyn::step(t, orbit.back()) == t);
    }
    CHECK_THROWS_AS(dyn::stable_orbit(RotationFraction(1, 2), Rational(1, 3)),
                    std::domain_error);
    CHECK_THROWS_AS(dyn::stable_orbit(RotationFraction(1, 2), Rational(9, 10)),
                    std::domain_error);
}

TEST_CASE("limit_deviation examples") {
    CHECK(dyn::limit_deviation(RotationFraction(1, 2), Rational(2, 3)) == Rational(0));
    CHECK(dyn::limit_deviation(RotationFraction(1, 2), Rational(1, 3)) == Rational(0));
    // value at the discontinuity is the right limit
    CHECK(dyn::limit_deviation(RotationFraction(1, 2), Rational(1, 2)) == Rational(-1, 4));
    CHECK(dyn::limit_deviation(RotationFraction(2, 5), Rational(5, 16)) == Rational(-13, 80));
    CHECK_THROWS_AS(dyn::limit_deviation(RotationFraction(1, 2), Rational(1, 4)),
                    std::domain_error);
}

TEST_CASE("limit_deviation is affine with the expected slope and jump") {
    for (const auto& r : farey_enumerate(10)) {
        const Interval I = interval_I(r);
        const Rational t0 = t_of(r);
        const Rational slope = (Rational::pow2(r.q) - Rational(1)) / Rational(r.q);
        const Rational a = I.lo + (t0 - I.lo) / Rational(3);
        const Rational b = I.lo + (t0 - I.lo) * Rational(2, 3);
        CHECK((dyn::limit_deviation(r, b) - dyn::limit_deviation(r, a)) / (b - a) == slope);
        const Rational left_limit =
            dyn::limit_deviation(r, b) + slope * (t0 - b);
        CHECK(dyn::limit_deviation(r, t0) == left_limit - Rational(1, r.q));
    }
}

TEST_CASE("locate") {
    auto r = dyn::locate(Rational(1, 2), 5);
    REQUIRE(r.has_value());
    CHECK(*r == RotationFraction(1, 2));

    r = dyn::locate(Rational(3, 10), 5);
    REQUIRE(r.has_value());
    CHECK(*r == RotationFraction(2, 5));

    CHECK(!dyn::locate(Rational(1, 10), 3));
    CHECK_THROWS_AS(dyn::locate(Rational(0), 5), std::domain_error);
}

TEST_CASE("orbit_summary on a known orbit") {
    // t = 1/2, x0 = 1/2: orbit 1/2, 0, 1/2, ... enters the flat spot at 1
    const auto s = dyn::orbit_summary(0.5, 0.5, 1000, 100);
    REQUIRE(s.entry.has_value());
    CHECK(*s.entry == 1);
    REQUIRE(s.period.has_value());
    CHECK(*s.period == 2);
    CHECK(s.partial_sum == -250.0);
}

TEST_SUITE_END();
