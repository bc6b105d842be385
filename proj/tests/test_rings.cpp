#include <numeric>
#include <set>

#include "doctest.h"
#include "floer/error.hpp"
#include "floer/rings.hpp"
#include "test_util.hpp"

using namespace floer;
using testutil::q;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("4/6") == Rational(2, 3));
  CHECK(to_string(parse_rational("4/6")) == "2/3");
  CHECK(to_string(parse_rational("-6/2")) == "-3");
  CHECK(to_string(parse_rational("6/3")) == "2");
  CHECK(to_string(parse_rational("\xE2\x88\x92" "8")) == "-8");
  CHECK(parse_rational("+5/10") == Rational(1, 2));
  CHECK_THROWS_AS(parse_rational("0.5"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
  CHECK_THROWS_AS(parse_rational("1/"), Error);
  CHECK_THROWS_AS(parse_rational("1e3"), Error);
  try {
    parse_rational("0.1");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
}

TEST_CASE("extended rationals order +inf last") {
  ExtendedRational inf = ExtendedRational::infinity();
  CHECK(ExtendedRational(q("9/20")) < inf);
  CHECK_FALSE(inf < inf);
  CHECK(inf == inf);
  CHECK(min(inf, ExtendedRational(q("1/3"))) == ExtendedRational(q("1/3")));
  CHECK(to_string(inf) == "inf");
  CHECK(to_string(ExtendedRational(q("7/20"))) == "7/20");
}

TEST_CASE("ring construction and parsing") {
  CHECK(Ring::parse("Z") == Ring::integers());
  CHECK(Ring::parse("Q") == Ring::rationals());
  CHECK(Ring::parse("Z/8") == Ring::integers_mod(8));
  CHECK(Ring::parse("F5") == Ring::prime_field(5));
  CHECK(Ring::parse("Z/8").name() == "Z/8");
  CHECK(Ring::parse("F2").name() == "F2");
  CHECK_THROWS_AS(Ring::prime_field(9), Error);
  CHECK_THROWS_AS(Ring::integers_mod(1), Error);
  CHECK_THROWS_AS(Ring::parse("R"), Error);
  CHECK_THROWS_AS(Ring::parse("Z/x"), Error);
  CHECK_THROWS_AS(Ring::parse("F4"), Error);
}

TEST_CASE("reduce examples") {
  CHECK(reduce(-8L, Ring::integers_mod(8)).value() == 0);
  CHECK(reduce(16L, Ring::integers_mod(8)).value() == 0);
  CHECK(reduce(q("4/6"), Ring::rationals()).value() == Rational(2, 3));
  CHECK(reduce(q("1/3"), Ring::integers_mod(8)).value() == 3);  // 3*3 = 9 = 1
  CHECK(reduce(-1L, Ring::integers_mod(8)).value() == 7);
  SUBCASE("zero-divisor denominators are rejected") {
    try {
      reduce(q("1/2"), Ring::integers_mod(8));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonInvertibleDenominator);
    }
    CHECK_THROWS_AS(reduce(q("1/2"), Ring::integers()), Error);
  }
}

TEST_CASE("units_of examples") {
  auto as_ints = [](const std::vector<RingElement>& v) { return testutil::coords_as_integers(v); };
  CHECK(as_ints(units_of(Ring::integers_mod(8))) == testutil::ints({1, 3, 5, 7}));
  CHECK(as_ints(units_of(Ring::integers_mod(2))) == testutil::ints({1}));
  CHECK(as_ints(units_of(Ring::prime_field(5))) == testutil::ints({1, 2, 3, 4}));
  CHECK_THROWS_AS(units_of(Ring::integers()), Error);
  CHECK_THROWS_AS(units_of(Ring::rationals()), Error);
}

TEST_CASE("units_of matches brute force for n <= 64") {
  for (long n = 2; n <= 64; ++n) {
    const Ring ring = Ring::integers_mod(n);
    std::vector<Integer> brute;
    for (long x = 0; x < n; ++x)
      for (long y = 0; y < n; ++y)
        if ((x * y) % n == 1 % n) {
          brute.emplace_back(x);
          break;
        }
    CHECK(testutil::coords_as_integers(units_of(ring)) == brute);
  }
}

TEST_CASE("element arithmetic") {
  const Ring z8 = Ring::integers_mod(8);
  RingElement three = reduce(3L, z8);
  CHECK(three.inverse() == three);
  CHECK((three * three).value() == 1);
  CHECK(reduce(5L, z8).pow(-1) == reduce(5L, z8));
  CHECK(reduce(2L, z8).pow(3).is_zero());
  CHECK_FALSE(reduce(2L, z8).is_unit());
  CHECK_THROWS_AS(reduce(2L, z8).inverse(), Error);
  CHECK(reduce(-1L, Ring::integers()).is_unit());
  CHECK(reduce(q("2/3"), Ring::rationals()).inverse().value() == Rational(3, 2));
  CHECK((-reduce(3L, z8)).value() == 5);
  CHECK(reduce(q("1/2"), Ring::rationals()).to_string() == "1/2");
}

TEST_CASE("reduce is an idempotent ring homomorphism") {
  const std::vector<Ring> rings = {Ring::integers(), Ring::rationals(), Ring::integers_mod(8),
                                   Ring::integers_mod(12), Ring::prime_field(7), Ring::integers_mod(2)};
  for (const auto& ring : rings) {
    CAPTURE(ring.name());
    for (int trial = 0; trial < 1000; ++trial) {
      auto random_value = [&]() -> Rational {
        long num = testutil::uniform(-1000, 1000);
        long den = 1;
        if (ring == Ring::rationals()) {
          den = testutil::uniform(1, 50);
        } else if (ring.is_finite()) {
          // denominators coprime to the modulus
          long n = static_cast<long>(ring.modulus());
          do den = testutil::uniform(1, 30);
          while (std::gcd(den, n) != 1);
        }
        return Rational(num, den);
      };
      Rational a = random_value();
      Rational b = random_value();
      RingElement ra = reduce(a, ring);
      RingElement rb = reduce(b, ring);
      CHECK(reduce(ra.value(), ring) == ra);
      CHECK(reduce(a + b, ring) == ra + rb);
      CHECK(reduce(a * b, ring) == ra * rb);
      CHECK(reduce(a - b, ring) == ra - rb);
      if (ring.is_finite()) {
        CHECK(ra.value() >= 0);
        CHECK(ra.value() < Rational(ring.modulus()));
      }
    }
  }
}
