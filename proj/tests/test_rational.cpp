#include "doctest.h"

#include "flatspot/rational.hpp"

using flatspot::Rational;

TEST_SUITE_BEGIN("rational");

TEST_CASE("construction reduces to lowest terms with positive denominator") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, 4) == Rational(-1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(6, 3).is_integer());
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("arithmetic is exact") {
    const Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK_THROWS_AS(a / Rational(0), std::domain_error);
    // repeated accumulation stays exact
    Rational s;
    for (int i = 0; i < 3000; ++i) s += Rational(1, 3);
    CHECK(s == Rational(1000));
}

TEST_CASE("floor and fractional part") {
    CHECK(Rational(7, 3).floor() == 2);
    CHECK(Rational(-7, 3).floor() == -3);
    CHECK(Rational(7, 3).frac() == Rational(1, 3));
    CHECK(Rational(-7, 3).frac() == Rational(2, 3));
    CHECK(Rational(4).frac() == Rational(0));
}

TEST_CASE("ordering") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(5, 16) <= Rational(5, 16));
    CHECK(Rational(2, 3) > Rational(0));
}

TEST_CASE("serialization: num/den in lowest terms, integers bare") {
    CHECK(Rational(5, 16).str() == "5/16");
    CHECK(Rational(-13, 80).str() == "-13/80");
    CHECK(Rational(-25, 80).str() == "-5/16");
    CHECK(Rational(3).str() == "3");
    CHECK(Rational(-4, 2).str() == "-2");
    CHECK(Rational(0).str() == "0");
}

TEST_CASE("parse accepts integers, fractions and decimals") {
    CHECK(*Rational::parse("5/16") == Rational(5, 16));
    CHECK(*Rational::parse("-13/80") == Rational(-13, 80));
    CHECK(*Rational::parse("7") == Rational(7));
    CHECK(*Rational::parse("-7") == Rational(-7));
    CHECK(*Rational::parse("0.25") == Rational(1, 4));
    CHECK(*Rational::parse("-0.3") == Rational(-3, 10));
    CHECK(*Rational::parse(".5") == Rational(1, 2));
    CHECK(!Rational::parse(""));
    CHECK(!Rational::parse("a/b"));
    CHECK(!Rational::parse("1/0"));
    CHECK(!Rational::parse("1 / 2"));
}

TEST_CASE("parse round-trips str") {
    for (long n = -40; n <= 40; ++n)
        for (long d = 1; d <= 12; ++d) {
            const Rational r(n, d);
            CHECK(*Rational::parse(r.str()) == r);
        }
}

TEST_CASE("pow2 and from_double") {
    CHECK(Rational::pow2(0) == Rational(1));
    CHECK(Rational::pow2(5) == Rational(32));
    CHECK(Rational::pow2(-3) == Rational(1, 8));
    CHECK(Rational::from_double(0.375) == Rational(3, 8));
    CHECK(Rational::from_double(-2.5) == Rational(-5, 2));
    CHECK(Rational::from_double(0x1.0p-53) == Rational::pow2(-53));
}

TEST_CASE("to_double is deterministic and faithful for representable values") {
    CHECK(Rational(3, 8).to_double() == 0.375);
    CHECK(Rational(-1, 2).to_double() == -0.5);
    const double d = Rational(2, 3).to_double();
    CHECK(d > 0.6666666666666665);
    CHECK(d < 0.6666666666666668);
}

TEST_SUITE_END();
