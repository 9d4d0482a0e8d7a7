#include <doctest.h>

#include "laakso/rational.hpp"

using laakso::Rational;

TEST_CASE("rational normalization and arithmetic") {
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(-6, 4) == Rational(-3, 2));
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(0, 7) == Rational(0));

  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(2, 3) / Rational(4, 3) == Rational(1, 2));
  CHECK(-Rational(1, 2) == Rational(-1, 2));
}

TEST_CASE("rational ordering") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(1, 3));
  CHECK(Rational(81, 4) > Rational(20));
  CHECK(Rational(81, 4) <= Rational(81, 4));
}

TEST_CASE("rational errors") {
  CHECK_THROWS_AS(Rational(1, 0), laakso::Error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), laakso::Error);
}

TEST_CASE("rational display") {
  CHECK(Rational(81, 4).str() == "81/4");
  CHECK(Rational(8, 4).str() == "2");
  CHECK(Rational(81, 4).to_double() == doctest::Approx(20.25));
}
