#include <catch2/catch_amalgamated.hpp>

#include "pseudorank/rational.hpp"

using pseudorank::Rational;

TEST_CASE("normalization and arithmetic")
{
    REQUIRE(Rational(2, 4) == Rational(1, 2));
    REQUIRE(Rational(-3, -6) == Rational(1, 2));
    REQUIRE(Rational(3, -6) == Rational(-1, 2));
    REQUIRE((Rational(1, 6) + Rational(1, 3)) == Rational(1, 2));
    REQUIRE((Rational(7, 12) - Rational(1, 2)) == Rational(1, 12));
    REQUIRE((Rational(2, 3) * Rational(3, 4)) == Rational(1, 2));
    REQUIRE((Rational(1, 2) / Rational(1, 6)) == Rational(3));
    REQUIRE(-Rational(1, 3) == Rational(-1, 3));
}

TEST_CASE("ordering")
{
    REQUIRE(Rational(1, 3) < Rational(1, 2));
    REQUIRE(Rational(-1, 2) < Rational(-1, 3));
    REQUIRE(Rational(7, 12) > Rational(1, 2));
}

TEST_CASE("errors")
{
    REQUIRE_THROWS_AS(Rational(1, 0), std::domain_error);
    REQUIRE_THROWS_AS(Rational(1, 2) / Rational(0), std::domain_error);
}

TEST_CASE("from_double recovers small fractions")
{
    REQUIRE(Rational::from_double(1.0 / 6.0) == Rational(1, 6));
    REQUIRE(Rational::from_double(2.0 / 3.0) == Rational(2, 3));
    REQUIRE(Rational::from_double(1.0 / 12.0) == Rational(1, 12));
    REQUIRE(Rational::from_double(-0.25) == Rational(-1, 4));
    REQUIRE(Rational::from_double(5.0) == Rational(5));
    REQUIRE_THROWS_AS(Rational::from_double(std::sqrt(2.0), 100, 1e-12), std::domain_error);
}

TEST_CASE("to_string")
{
    REQUIRE(Rational(7, 12).to_string() == "7/12");
    REQUIRE(Rational(-1, 12).to_string() == "-1/12");
    REQUIRE(Rational(3).to_string() == "3");
}
