#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "wrank/errors.hpp"
#include "wrank/rational.hpp"

using namespace wrank;

TEST_CASE("parse_rational canonicalizes") {
  CHECK(rational_str(parse_rational("3/6")) == "1/2");
  CHECK(rational_str(parse_rational("-4/8")) == "-1/2");
  CHECK(rational_str(parse_rational("3/-6")) == "-1/2");
  CHECK(rational_str(parse_rational("7")) == "7");
  CHECK(rational_str(parse_rational("+3")) == "3");
  CHECK(rational_str(parse_rational("0/5")) == "0");
  CHECK(rational_str(parse_rational("-0")) == "0");
  CHECK(parse_rational("2/4") == parse_rational("1/2"));
}

TEST_CASE("parse_rational rejects malformed input") {
  CHECK_THROWS_AS(parse_rational(""), input_error);
  CHECK_THROWS_AS(parse_rational("1/0"), input_error);
  CHECK_THROWS_AS(parse_rational("abc"), input_error);
  CHECK_THROWS_AS(parse_rational("1.5"), input_error);
  CHECK_THROWS_AS(parse_rational("2/"), input_error);
  CHECK_THROWS_AS(parse_rational("/3"), input_error);
  CHECK_THROWS_AS(parse_rational("1 / 2"), input_error);
  CHECK_THROWS_AS(parse_rational("0x10"), input_error);
  CHECK_THROWS_AS(parse_rational("1/2/3"), input_error);
}

TEST_CASE("complex rational field operations") {
  const CRational a{Rational(1), Rational(2)};
  const CRational b{Rational(3), Rational(-1)};
  CHECK(a * b == CRational{Rational(5), Rational(5)});
  CHECK((a * b) / b == a);
  CHECK(a + b == CRational{Rational(4), Rational(1)});
  CHECK(a - a == CRational{});
  CHECK((a - a).is_zero());
  CHECK(a.conj() == CRational{Rational(1), Rational(-2)});
  CHECK(CRational{Rational(3), Rational(4)}.norm2() == Rational(25));
  CHECK_THROWS_AS(a / CRational{}, contract_error);
}

TEST_CASE("exactness survives accumulation") {
  CRational acc;
  const CRational third{Rational(1, 3)};
  for (int i = 0; i < 3000; ++i) acc += third;
  CHECK(acc == CRational{Rational(1000)});
}

TEST_CASE("integer_pow") {
  CHECK(integer_pow(7, 11) == Integer("1977326743"));
  CHECK(integer_pow(2, 0) == 1);
  CHECK(integer_pow(10, 30) == Integer("1000000000000000000000000000000"));
}

TEST_CASE("crational display form") {
  CHECK(crational_str(CRational{Rational(1, 2)}) == "1/2");
  CHECK(crational_str(CRational{Rational(0), Rational(-2)}) == "0 - 2*i");
  CHECK(crational_str(CRational{Rational(3), Rational(1, 4)}) == "3 + 1/4*i");
}
