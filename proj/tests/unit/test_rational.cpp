#include "kbmf/rational.hpp"

#include <doctest.h>

using kbmf::Rational;

TEST_CASE("rational arithmetic stays normalised") {
    Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK((a + b).den() == 2);
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
}

TEST_CASE("rational ordering and ceil/floor") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 3) > Rational(-1, 2));
    CHECK(Rational(7, 2).ceil() == 4);
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(-7, 2).ceil() == -3);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(4).ceil() == 4);
}

TEST_CASE("from_double is exact for representable values") {
    CHECK(Rational::from_double(0.5) == Rational(1, 2));
    CHECK(Rational::from_double(0.25) == Rational(1, 4));
    CHECK(Rational::from_double(3.0) == Rational(3));
    CHECK(Rational::from_double(-0.75) == Rational(-3, 4));
    // Round trip: 1/3 is not representable, but the conversion of its double
    // image must reproduce the same double.
    double third = 1.0 / 3.0;
    CHECK(Rational::from_double(third).to_double() == third);
}

TEST_CASE("parse accepts fractions and decimals") {
    CHECK(Rational::parse("3/4") == Rational(3, 4));
    CHECK(Rational::parse("-3/4") == Rational(-3, 4));
    CHECK(Rational::parse("2") == Rational(2));
    CHECK(Rational::parse("0.25") == Rational(1, 4));
    CHECK(Rational::parse("1.5") == Rational(3, 2));
}

TEST_CASE("division by zero is rejected") {
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}
