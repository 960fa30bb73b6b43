#include <doctest.h>

#include <cmath>
#include <random>
#include <thread>

#include "w3j/error.hpp"
#include "w3j/exact.hpp"

using namespace w3j;

namespace {

HalfInt h(int twice) { return HalfInt::from_twice(twice); }

BigInt slow_factorial(HalfInt n) {
  BigInt f = 1;
  for (std::int64_t k = 2; k <= n.as_integer(); ++k) f *= k;
  return f;
}

// Stretched case x = a+b has a single-term closed form.
ExactValue stretched_closed_form(HalfInt a, HalfInt b, HalfInt alpha, HalfInt beta) {
  const HalfInt gamma = -(alpha + beta);
  const Rational sq = Rational(slow_factorial(2 * a) * slow_factorial(2 * b) *
                               slow_factorial(a + b + alpha + beta) * slow_factorial(a + b - alpha - beta)) /
                      (slow_factorial(2 * a + 2 * b + HalfInt(1)) * slow_factorial(a + alpha) *
                       slow_factorial(a - alpha) * slow_factorial(b + beta) * slow_factorial(b - beta));
  return ExactValue(phase_bit(a - b - gamma) ? -1 : 1, sq);
}

}  // namespace

TEST_CASE("is_triangle") {
  CHECK(is_triangle(1, 3, 2));
  CHECK_FALSE(is_triangle(1, 3, 5));
  CHECK(is_triangle(h(1), h(1), 1));
  CHECK_FALSE(is_triangle(h(1), 1, 1));  // a+b+x half-odd
}

TEST_CASE("selection_rules") {
  CHECK(selection_rules(make_args(1, 3, 2, 0, 0, 0)));
  CHECK_FALSE(selection_rules(make_args(1, 3, 2, 2, -2, 0)));
  CHECK(selection_rules(make_args(h(1), h(1), 1, h(1), h(-1), 0)));
}

TEST_CASE("make_args rejects broken parity") {
  CHECK_THROWS_AS(make_args(1, 1, 1, h(1), h(-1), 0), Error);
  CHECK_THROWS_AS(make_args(1, 1, 2, 1, 0, 0), Error);  // sum != 0
}

TEST_CASE("exact_3j reference values") {
  CHECK(exact_3j(make_args(0, 0, 0, 0, 0, 0)) == ExactValue::one());
  const ExactValue v = exact_3j(make_args(1, 1, 2, 0, 0, 0));
  CHECK(v == ExactValue(1, Rational(2, 15)));
  CHECK(v.to_double() == doctest::Approx(0.3651484).epsilon(1e-7));
  CHECK(exact_3j(make_args(h(1), h(1), 1, h(1), h(-1), 0)) == ExactValue(1, Rational(1, 6)));
  CHECK(exact_3j(make_args(1, 1, 0, 0, 0, 0)) == ExactValue(-1, Rational(1, 3)));
  CHECK(exact_3j(make_args(1, 1, 1, 0, 0, 0)).is_zero());
}

TEST_CASE("exact_3j is zero outside the selection rules; strict mode throws") {
  const ThreeJArgs bad = make_args(1, 3, 5, 0, 0, 0);
  CHECK(exact_3j(bad).is_zero());
  CHECK_THROWS_AS(exact_3j(bad, Strictness::strict), Error);
  try {
    exact_3j(make_args(1, 3, 2, 2, -2, 0), Strictness::strict);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_arguments);
  }
}

TEST_CASE("cg_from_3j") {
  CHECK(cg_from_3j(make_args(0, 0, 0, 0, 0, 0)) == ExactValue::one());
  CHECK(cg_from_3j(make_args(h(1), h(1), 1, h(1), h(-1), 0)) == ExactValue(1, Rational(1, 2)));
  CHECK(cg_from_3j(make_args(1, 1, 2, 0, 0, 0)) == ExactValue(1, Rational(2, 3)));
  // phase (-1)^(a-b-gamma) = -1 here
  const ThreeJArgs odd = make_args(1, 1, 1, 1, 0, -1);
  CHECK(cg_from_3j(odd).sign() == -exact_3j(odd).sign());
}

TEST_CASE("stretched symbols match the single-term closed form") {
  for (int ta = 0; ta <= 10; ++ta)
    for (int tb = 0; tb <= 10; ++tb)
      for (int tal = -ta; tal <= ta; tal += 2)
        for (int tbe = -tb; tbe <= tb; tbe += 2) {
          const ThreeJArgs args = make_args(h(ta), h(tb), h(ta + tb), h(tal), h(tbe));
          CAPTURE(args.str());
          CHECK(exact_3j(args) == stretched_closed_form(h(ta), h(tb), h(tal), h(tbe)));
        }
}

TEST_CASE("3j(j j 0; m -m 0) = (-1)^(j-m)/sqrt(2j+1)") {
  for (int tj = 0; tj <= 20; ++tj)
    for (int tm = -tj; tm <= tj; tm += 2) {
      const ExactValue v = exact_3j(make_args(h(tj), h(tj), 0, h(tm), h(-tm), 0));
      CHECK(v == ExactValue(phase_bit(h(tj - tm)) ? -1 : 1, Rational(1, tj + 1)));
    }
}

TEST_CASE("orthogonality sums are exactly one (property)") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const int ta = static_cast<int>(rng() % 13), tb = static_cast<int>(rng() % 13);
    const int tal = -ta + 2 * static_cast<int>(rng() % (ta + 1));
    const int tbe = -tb + 2 * static_cast<int>(rng() % (tb + 1));
    const HalfInt a = h(ta), b = h(tb), alpha = h(tal), beta = h(tbe);

    // over x at fixed projections
    Rational over_x = 0;
    const HalfInt x_lo = max((a - b).abs(), (alpha + beta).abs());
    for (HalfInt x = x_lo; x <= a + b; x += HalfInt(1))
      over_x += Rational(x.twice() + 1) * exact_3j(make_args(a, b, x, alpha, beta)).square();
    CHECK(over_x == 1);

    // over projections at fixed x and gamma
    const HalfInt x = a + b - HalfInt(static_cast<int>(rng() % (std::min(ta, tb) + 1)));
    const HalfInt gamma = -(alpha + beta);
    if (gamma.abs() > x) continue;
    Rational over_m = 0;
    for (HalfInt al = -a; al <= a; al += HalfInt(1)) {
      const HalfInt be = -gamma - al;
      if (be.abs() > b) continue;
      over_m += exact_3j(make_args(a, b, x, al, be, gamma)).square();
    }
    CHECK(over_m * Rational(x.twice() + 1) == 1);
  }
}

TEST_CASE("ExactValue invariants and formatting") {
  CHECK_THROWS_AS(ExactValue(0, Rational(1, 2)), Error);
  CHECK_THROWS_AS(ExactValue(1, Rational(0)), Error);
  CHECK_THROWS_AS(ExactValue(1, Rational(-1)), Error);
  CHECK(ExactValue::one().exact_str() == "1");
  CHECK(ExactValue(-1, Rational(1, 4)).exact_str() == "-1/2");
  CHECK(ExactValue(1, Rational(2, 15)).exact_str() == "+sqrt(2/15)");
  CHECK(ExactValue(-1, Rational(3)).exact_str() == "-sqrt(3)");
  CHECK(ExactValue::zero().exact_str() == "0");
  // squaring round-trips
  const ExactValue v = exact_3j(make_args(3, 4, 5, 1, -2, 1));
  CHECK(ExactValue(v.sign(), v.square()) == v);
  CHECK(v.to_double() * v.to_double() == doctest::Approx(v.square().convert_to<double>()));
}

TEST_CASE("sqrt_rational survives numbers beyond binary64 range") {
  const Rational r(factorial(400), factorial(398));
  CHECK(sqrt_rational(r) == doctest::Approx(std::sqrt(400.0 * 399.0)).epsilon(1e-15));
  const Rational tiny(factorial(180), factorial(400));
  const double expect = std::exp(0.5 * (std::lgamma(181.0) - std::lgamma(401.0)));
  CHECK(sqrt_rational(tiny) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("factorial cache is safe under concurrent growth") {
  std::vector<std::thread> pool;
  std::vector<int> ok(8, 0);
  for (int t = 0; t < 8; ++t)
    pool.emplace_back([t, &ok] {
      bool good = true;
      for (int n = 0; n < 300; n += 1 + t) {
        BigInt f = 1;
        for (int k = 2; k <= n; ++k) f *= k;
        good = good && factorial(static_cast<std::size_t>(n)) == f;
      }
      ok[t] = good;
    });
  for (auto& th : pool) th.join();
  for (int v : ok) CHECK(v == 1);
}
