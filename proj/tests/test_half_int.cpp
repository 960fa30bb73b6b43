#include <doctest.h>

#include <random>

#include "w3j/error.hpp"
#include "w3j/half_int.hpp"

using namespace w3j;

TEST_CASE("parse accepts integers, halves and .5 decimals") {
  CHECK(parse_half_int("3") == HalfInt(3));
  CHECK(parse_half_int("3/2").twice() == 3);
  CHECK(parse_half_int("-1/2").twice() == -1);
  CHECK(parse_half_int("1.5").twice() == 3);
  CHECK(parse_half_int(".5").twice() == 1);
  CHECK(parse_half_int("-0.5").twice() == -1);
  CHECK(parse_half_int("2.0") == HalfInt(2));
  CHECK(parse_half_int("4/2") == HalfInt(2));
  CHECK(parse_half_int("+7") == HalfInt(7));
}

TEST_CASE("parse rejects other fractions") {
  for (const char* bad : {"1/3", "1.25", "0.7", "", "-", "abc", "1/", "/2", "1.5.0", "2/4x"}) {
    CAPTURE(bad);
    try {
      parse_half_int(bad);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::parse_error);
    }
  }
}

TEST_CASE("printing") {
  CHECK(HalfInt::from_twice(-3).str() == "-3/2");
  CHECK(HalfInt(4).str() == "4");
  CHECK(HalfInt::from_twice(-1).decimal() == "-0.5");
  CHECK(HalfInt::from_twice(7).decimal() == "3.5");
}

TEST_CASE("halving and integer extraction respect the lattice") {
  CHECK(HalfInt(3).halved().twice() == 3);
  CHECK_THROWS_AS(HalfInt::from_twice(3).halved(), Error);
  CHECK_THROWS_AS(HalfInt::from_twice(1).as_integer(), Error);
  CHECK(phase_bit(HalfInt(-3)) == 1);
  CHECK(phase_bit(HalfInt(4)) == 0);
}

TEST_CASE("arithmetic is exact and ordered (property)") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> dist(-200, 200);
  for (int k = 0; k < 2000; ++k) {
    const HalfInt a = HalfInt::from_twice(dist(rng)), b = HalfInt::from_twice(dist(rng));
    CHECK((a + b) - b == a);
    CHECK(-(-a) == a);
    CHECK((a < b) == (a.value() < b.value()));
    CHECK(parse_half_int(a.str()) == a);
    CHECK(parse_half_int(a.decimal()) == a);
  }
}
