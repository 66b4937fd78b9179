#include <doctest.h>

#include "rootbound/rational.hpp"

using rootbound::Rational;

TEST_CASE("rationals are canonical: lowest terms, positive denominator") {
    CHECK(Rational(6, 8).str() == "3/4");
    CHECK(Rational(3, -6).str() == "-1/2");
    CHECK(Rational(-2, -4).str() == "1/2");
    CHECK(Rational(0, 7).str() == "0");
    CHECK(Rational(5, 1).str() == "5");
    CHECK(Rational(6, 8).den() == 4);
}

TEST_CASE("arithmetic is exact") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 3) * Rational(3, 7) == Rational(1, 7));
    CHECK(Rational(1) - Rational(1, 10) - Rational(9, 10) == Rational(0));
    CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
    // no float contamination: (1/3)*3 is exactly 1
    CHECK(Rational(1, 3) * Rational(3) == Rational(1));
}

TEST_CASE("string round trip") {
    CHECK(Rational::from_string("13/16") == Rational(13, 16));
    CHECK(Rational::from_string("-5/128").str() == "-5/128");
    CHECK(Rational::from_string("42") == Rational(42));
    CHECK(Rational::from_string("4/6").str() == "2/3");
    CHECK_THROWS_AS(Rational::from_string("1/0"), std::domain_error);
    CHECK_THROWS_AS(Rational::from_string("a/b"), std::invalid_argument);
}

TEST_CASE("integer powers, both signs") {
    CHECK(Rational(5, 2).pow(-2) == Rational(4, 25));
    CHECK(Rational(3, 4).pow(3) == Rational(27, 64));
    CHECK(Rational(7).pow(0) == Rational(1));
    CHECK_THROWS_AS(Rational(0).pow(-1), std::domain_error);
}

TEST_CASE("division by zero is an error") {
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}
