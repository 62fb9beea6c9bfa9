#include <doctest.h>

#include "ochoice/error.hpp"
#include "ochoice/rational.hpp"

using ochoice::Rational;

TEST_CASE("decimal strings convert losslessly") {
  CHECK(Rational::parse("0.20").str() == "1/5");
  CHECK(Rational::parse("0.35").str() == "7/20");
  CHECK(Rational::parse("0.25").str() == "1/4");
  CHECK(Rational::parse(".5").str() == "1/2");
  CHECK(Rational::parse("1.0").str() == "1");
  CHECK(Rational::parse("-0.75").str() == "-3/4");
}

TEST_CASE("fraction and integer forms") {
  CHECK(Rational::parse("7/20").str() == "7/20");
  CHECK(Rational::parse("10/20").str() == "1/2");
  CHECK(Rational::parse("3").str() == "3");
  CHECK(Rational::parse("-6/4").str() == "-3/2");
  CHECK(Rational::parse(" 1/3 ").str() == "1/3");
}

TEST_CASE("arithmetic stays exact") {
  Rational a = Rational::parse("1/3");
  Rational b = Rational::parse("1/6");
  CHECK((a + b).str() == "1/2");
  CHECK((a - b).str() == "1/6");
  CHECK((a * b).str() == "1/18");
  CHECK((a / b).str() == "2");
  CHECK((Rational(1) - Rational::parse("0.35") - Rational::parse("0.40")).str() == "1/4");
}

TEST_CASE("comparisons and helpers") {
  CHECK(Rational::parse("2/5") < Rational::parse("1/2"));
  CHECK(min(Rational::parse("1/2"), Rational::parse("2/5")).str() == "2/5");
  CHECK(max(Rational::parse("1/2"), Rational::parse("2/5")).str() == "1/2");
  CHECK(abs(Rational::parse("-1/2")).str() == "1/2");
  CHECK(Rational().is_zero());
  CHECK(Rational(1).is_one());
}

TEST_CASE("decimal rendering is display only") {
  CHECK(Rational::parse("7/20").decimal(2) == "0.35");
  CHECK(Rational::parse("1/3").decimal(4) == "0.3333");
  CHECK(Rational::parse("1/5").decimal(2) == "0.20");
  CHECK(Rational(1).decimal(2) == "1.00");
  CHECK(Rational::parse("-1/8").decimal(2) == "-0.12"); // half to even
}

TEST_CASE("malformed literals are rejected") {
  CHECK_THROWS_AS(Rational::parse(""), ochoice::Error);
  CHECK_THROWS_AS(Rational::parse("1/0"), ochoice::Error);
  CHECK_THROWS_AS(Rational::parse("a/b"), ochoice::Error);
  CHECK_THROWS_AS(Rational::parse("1.2.3"), ochoice::Error);
  CHECK_THROWS_AS(Rational::parse("1e3"), ochoice::Error);
}
