#include <doctest.h>

#include "sgsmc/rational.hpp"

using namespace sgsmc;

TEST_CASE("rational normalization and arithmetic") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-3, -6) == Rational(1, 2));
    CHECK(Rational(1, -2).num() == -1);
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
    CHECK(Rational(1) - Rational(1, 3) == Rational(2, 3));
    CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(1, 3).to_double() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("rational parsing") {
    CHECK(Rational::parse("1/2") == Rational(1, 2));
    CHECK(Rational::parse("3") == Rational(3));
    CHECK(Rational::parse("1/2").str() == "1/2");
    CHECK(Rational::parse("4/2").str() == "2");
    CHECK_THROWS(Rational::parse("x/y"));
    CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("rational overflow is detected") {
    const Rational big(INT64_MAX / 2, 1);
    CHECK_THROWS_AS(big * big, RationalOverflow);
}
