#include "stvss/rational.hpp"

#include <limits>
#include <stdexcept>

#include "doctest.h"

using stvss::rational;

TEST_CASE("construction reduces to canonical form") {
  CHECK(rational(2, 4) == rational(1, 2));
  CHECK(rational(-2, 4) == rational(-1, 2));
  CHECK(rational(2, -4) == rational(-1, 2));
  CHECK(rational(-2, -4) == rational(1, 2));
  CHECK(rational(0, 7) == rational(0));
  CHECK(rational(0, -7).den() == 1);
  CHECK_THROWS_AS(rational(1, 0), std::invalid_argument);
}

TEST_CASE("arithmetic is exact") {
  rational a(1, 6);
  rational b(1, 3);
  CHECK(a + b == rational(1, 2));
  CHECK(b - a == rational(1, 6));
  CHECK(a * b == rational(1, 18));
  CHECK(a / b == rational(1, 2));
  CHECK(-a == rational(-1, 6));
  CHECK(rational(5, 72) - rational(10, 72) == rational(-5, 72));
  CHECK_THROWS_AS(a / rational(0), std::invalid_argument);
}

TEST_CASE("ordering uses exact cross multiplication") {
  CHECK(rational(1, 3) < rational(1, 2));
  CHECK(rational(-1, 2) < rational(-1, 3));
  CHECK(rational(2, 6) <= rational(1, 3));
  CHECK(rational(7, 5) > rational(4, 3));
}

TEST_CASE("overflow is detected, not wrapped") {
  long long big = std::numeric_limits<long long>::max();
  rational huge(big, 1);
  CHECK_THROWS_AS(huge * rational(2), std::overflow_error);
  CHECK_THROWS_AS(huge + huge, std::overflow_error);
  // Reduction happens before the range check.
  CHECK(rational::from_int128(static_cast<__int128>(big) * 2, 4) == rational(big, 2));
}

TEST_CASE("string forms") {
  CHECK(rational(-5, 72).str() == "-5/72");
  CHECK(rational(0).str() == "0");
  CHECK(rational(3).str() == "3");
  CHECK(rational(4, 2).str() == "2");
}

TEST_CASE("decimal rendering rounds half away from zero") {
  CHECK(rational(1, 6).decimal(4) == "0.1667");
  CHECK(rational(-11, 360).decimal(4) == "-0.0306");
  CHECK(rational(1, 12).decimal(4) == "0.0833");
  CHECK(rational(-1, 60).decimal(4) == "-0.0167");
  CHECK(rational(1, 72).decimal(4) == "0.0139");
  CHECK(rational(1, 2).decimal(0) == "1");
  CHECK(rational(1, 8).decimal(2) == "0.13");
  CHECK(rational(-1, 200000).decimal(4) == "0.0000");  // rounds to zero, no sign
  CHECK(rational(0).decimal(3) == "0.000");
}

TEST_CASE("parse accepts p, p/q, and decimals") {
  CHECK(*rational::parse("-5/72") == rational(-5, 72));
  CHECK(*rational::parse("-4/90") == rational(-2, 45));
  CHECK(*rational::parse("0") == rational(0));
  CHECK(*rational::parse("7") == rational(7));
  CHECK(*rational::parse("-0.25") == rational(-1, 4));
  CHECK(*rational::parse("0.1667") == rational(1667, 10000));
  CHECK(!rational::parse("1/0").has_value());
  CHECK(!rational::parse("abc").has_value());
  CHECK(!rational::parse("1/2x").has_value());
}
