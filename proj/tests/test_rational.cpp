#include "doctest.h"

#include "ceq/rational.hpp"

using namespace ceq;

TEST_CASE("make_rational canonicalizes") {
    CHECK(make_rational(3, 6) == make_rational(1, 2));
    CHECK(make_rational(-3, 9) == make_rational(-1, 3));
    CHECK(make_rational(3, -9) == make_rational(-1, 3));
    CHECK(make_rational(-4, -2) == make_rational(2, 1));
    CHECK(make_rational(0, 17) == Rational(0));
    CHECK_THROWS_AS(make_rational(1, 0), ParseError);
}

TEST_CASE("to_fraction always prints num/den in lowest terms") {
    CHECK(to_fraction(make_rational(1, 2)) == "1/2");
    CHECK(to_fraction(make_rational(14, 21)) == "2/3");
    CHECK(to_fraction(Rational(7)) == "7/1");
    CHECK(to_fraction(Rational(0)) == "0/1");
    CHECK(to_fraction(make_rational(-5, 10)) == "-1/2");
}

TEST_CASE("parse_rational accepts integers and fractions") {
    CHECK(parse_rational("3/6") == make_rational(1, 2));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(parse_rational("-3/9") == make_rational(-1, 3));
    CHECK(parse_rational("0/5") == Rational(0));
    CHECK(parse_rational("123456789012345678901234567890/2") ==
          make_rational(Int("123456789012345678901234567890"), Int(2)));
}

TEST_CASE("parse_rational rejects malformed input") {
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/"), ParseError);
    CHECK_THROWS_AS(parse_rational("/2"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/2/3"), ParseError);
    CHECK_THROWS_AS(parse_rational(" 1/2"), ParseError);
}

TEST_CASE("arithmetic is exact") {
    Rational a = make_rational(1, 3);
    Rational b = make_rational(1, 6);
    CHECK(a + b == make_rational(1, 2));
    CHECK(a - b == make_rational(1, 6));
    CHECK(a * b == make_rational(1, 18));

    // A sum that would drift under binary floating point.
    Rational tenth = make_rational(1, 10);
    Rational sum = 0;
    for (int i = 0; i < 10; ++i) sum += tenth;
    CHECK(sum == Rational(1));
}

TEST_CASE("to_double gives closest double") {
    CHECK(to_double(make_rational(1, 2)) == 0.5);
    CHECK(to_double(Rational(-3)) == -3.0);
    CHECK(to_double(make_rational(1, 3)) == doctest::Approx(1.0 / 3.0));
}
