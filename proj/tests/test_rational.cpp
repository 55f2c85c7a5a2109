#include <random>
#include <stdexcept>

#include "doctest.h"
#include "ruledmod/rational.hpp"

using ruledmod::input_error;
using ruledmod::Rational;

TEST_CASE("rationals reduce to lowest terms with positive denominator") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, 4) == Rational(-1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(0, 7).den() == 1);
}

TEST_CASE("arithmetic is exact") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 3) - Rational(1, 2) == Rational(-1, 6));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
  CHECK(-Rational(5, 3) == Rational(-5, 3));
  CHECK_THROWS_AS(Rational(1, 2) / Rational(0), input_error);
}

TEST_CASE("comparisons are exact") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(7, 7) == Rational(1));
  CHECK(Rational(1, 3) <= Rational(1, 3));
  CHECK(Rational(5, 2) > Rational(2));
}

TEST_CASE("floor and ceil round toward the correct infinity") {
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(7, 2).ceil() == 4);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(Rational(6, 2).floor() == 3);
  CHECK(Rational(6, 2).ceil() == 3);
  CHECK(Rational(-1, 2).floor() == -1);
  CHECK(Rational(-1, 2).ceil() == 0);
}

TEST_CASE("parse accepts p, -p and p/q only") {
  CHECK(Rational::parse("3") == Rational(3));
  CHECK(Rational::parse("-3") == Rational(-3));
  CHECK(Rational::parse("1/3") == Rational(1, 3));
  CHECK(Rational::parse("-2/6") == Rational(-1, 3));
  CHECK_THROWS_AS(Rational::parse(""), input_error);
  CHECK_THROWS_AS(Rational::parse("-"), input_error);
  CHECK_THROWS_AS(Rational::parse("1/0"), input_error);
  CHECK_THROWS_AS(Rational::parse("1/-2"), input_error);
  CHECK_THROWS_AS(Rational::parse("1.5"), input_error);
  CHECK_THROWS_AS(Rational::parse("a"), input_error);
  CHECK_THROWS_AS(Rational::parse("1/2x"), input_error);
  CHECK_THROWS_AS(Rational::parse(" 1"), input_error);
}

TEST_CASE("str round-trips through parse") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long long> num(-200, 200);
  std::uniform_int_distribution<long long> den(1, 60);
  for (int i = 0; i < 2000; ++i) {
    const Rational r(num(rng), den(rng));
    CHECK(Rational::parse(r.str()) == r);
  }
}

TEST_CASE("overflow throws instead of wrapping") {
  const Rational big(1'000'000'000'000'000'000LL);
  CHECK_THROWS_AS(big * big, std::overflow_error);
}
