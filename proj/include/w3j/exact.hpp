#pragma once

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <string>

#include "w3j/half_int.hpp"

namespace w3j {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// The six entries (a b x; alpha beta gamma) of a 3j symbol.
struct ThreeJArgs {
  HalfInt a, b, x;
  HalfInt alpha, beta, gamma;

  /// Projections sum to zero, each projection shares its momentum's parity,
  /// and a+b+x is integral. Does not check sign or triangle conditions.
  bool structurally_valid() const;
  /// Throws Errc::parity_violation unless structurally_valid().
  const ThreeJArgs& validate() const;
  /// All three momenta nonnegative (mirror images carry negative entries).
  bool physical() const;

  std::array<std::int64_t, 6> key() const {
    return {a.twice(), b.twice(), x.twice(), alpha.twice(), beta.twice(), gamma.twice()};
  }
  std::string str() const;

  friend auto operator<=>(const ThreeJArgs&, const ThreeJArgs&) = default;
};

/// Builds and validates; gamma defaults to -(alpha+beta).
ThreeJArgs make_args(HalfInt a, HalfInt b, HalfInt x, HalfInt alpha, HalfInt beta);
ThreeJArgs make_args(HalfInt a, HalfInt b, HalfInt x, HalfInt alpha, HalfInt beta,
                     HalfInt gamma);

/// sign * sqrt(square) with an exact, reduced rational square.
class ExactValue {
 public:
  ExactValue() = default;
  /// Throws invalid_arguments unless sign is in {-1,0,1}, square >= 0 and
  /// (sign == 0) == (square == 0).
  ExactValue(int sign, Rational square);

  static ExactValue zero() { return {}; }
  static ExactValue one() { return {1, Rational(1)}; }

  int sign() const { return sign_; }
  const Rational& square() const { return square_; }
  bool is_zero() const { return sign_ == 0; }

  double to_double() const;
  ExactValue negated() const { return sign_ == 0 ? *this : ExactValue(-sign_, square_); }
  /// this * (-1)^bit
  ExactValue with_phase(int bit) const { return (bit & 1) ? negated() : *this; }
  /// this * sqrt(factor), factor >= 0.
  ExactValue times_sqrt(const Rational& factor) const;

  /// "1", "-1/2", "+sqrt(2/15)", "-sqrt(3)"; perfect squares print as rationals.
  std::string exact_str() const;

  friend bool operator==(const ExactValue&, const ExactValue&) = default;

 private:
  int sign_ = 0;
  Rational square_{0};
};

/// sqrt(n/d) in binary64 without overflowing for huge numerators/denominators.
double sqrt_rational(const Rational& square);

/// n! from a process-wide cache; safe for concurrent callers.
const BigInt& factorial(std::size_t n);

bool is_triangle(HalfInt a, HalfInt b, HalfInt x);
bool selection_rules(const ThreeJArgs& args);

enum class Strictness { lenient, strict };

/// Exact 3j symbol by the Racah single-sum formula. Invalid arguments give
/// zero, or throw Errc::invalid_arguments in strict mode.
ExactValue exact_3j(const ThreeJArgs& args, Strictness mode = Strictness::lenient);

/// <a alpha, b beta | x -gamma> = (-1)^(a-b-gamma) sqrt(2x+1) 3j(a b x; alpha beta gamma).
ExactValue cg_from_3j(const ThreeJArgs& args, Strictness mode = Strictness::lenient);

}  // namespace w3j
