#include "w3j/exact.hpp"

#include <cmath>
#include <deque>
#include <mutex>
#include <shared_mutex>

#include "w3j/error.hpp"

namespace w3j {

bool ThreeJArgs::structurally_valid() const {
  auto same_parity = [](HalfInt j, HalfInt m) { return ((j.twice() - m.twice()) % 2) == 0; };
  return (alpha + beta + gamma) == HalfInt(0) && same_parity(a, alpha) && same_parity(b, beta) &&
         same_parity(x, gamma) && (a + b + x).is_integer();
}

const ThreeJArgs& ThreeJArgs::validate() const {
  if (!structurally_valid())
    throw Error(Errc::parity_violation, "malformed 3j arguments " + str());
  return *this;
}

bool ThreeJArgs::physical() const {
  return a >= HalfInt(0) && b >= HalfInt(0) && x >= HalfInt(0);
}

std::string ThreeJArgs::str() const {
  return "(" + a.str() + " " + b.str() + " " + x.str() + "; " + alpha.str() + " " + beta.str() +
         " " + gamma.str() + ")";
}

ThreeJArgs make_args(HalfInt a, HalfInt b, HalfInt x, HalfInt alpha, HalfInt beta) {
  return make_args(a, b, x, alpha, beta, -(alpha + beta));
}

ThreeJArgs make_args(HalfInt a, HalfInt b, HalfInt x, HalfInt alpha, HalfInt beta,
                     HalfInt gamma) {
  ThreeJArgs args{a, b, x, alpha, beta, gamma};
  args.validate();
  return args;
}

ExactValue::ExactValue(int sign, Rational square) : sign_(sign), square_(std::move(square)) {
  if (sign_ < -1 || sign_ > 1 || square_ < 0 || ((sign_ == 0) != (square_ == 0)))
    throw Error(Errc::invalid_arguments, "inconsistent sign/square pair");
}

double sqrt_rational(const Rational& square) {
  using boost::multiprecision::msb;
  if (square <= 0) return 0.0;
  const BigInt num = boost::multiprecision::numerator(square);
  const BigInt den = boost::multiprecision::denominator(square);
  // Scale so the integer quotient carries ~64 significant bits.
  const long shift = 64 - (static_cast<long>(msb(num)) - static_cast<long>(msb(den)));
  BigInt q = shift >= 0 ? BigInt((num << shift) / den) : BigInt(num / (den << -shift));
  double mantissa = q.convert_to<double>();
  long exponent = -shift;
  if (exponent % 2 != 0) {
    mantissa *= 2.0;
    exponent -= 1;
  }
  return std::ldexp(std::sqrt(mantissa), static_cast<int>(exponent / 2));
}

double ExactValue::to_double() const { return sign_ * sqrt_rational(square_); }

ExactValue ExactValue::times_sqrt(const Rational& factor) const {
  if (factor < 0) throw Error(Errc::invalid_arguments, "sqrt of a negative factor");
  if (sign_ == 0 || factor == 0) return zero();
  return {sign_, square_ * factor};
}

namespace {

bool perfect_square(const BigInt& n, BigInt& root) {
  root = boost::multiprecision::sqrt(n);
  return root * root == n;
}

}  // namespace

std::string ExactValue::exact_str() const {
  if (sign_ == 0) return "0";
  const BigInt num = boost::multiprecision::numerator(square_);
  const BigInt den = boost::multiprecision::denominator(square_);
  BigInt rn, rd;
  const std::string minus = sign_ < 0 ? "-" : "";
  if (perfect_square(num, rn) && perfect_square(den, rd)) {
    return minus + rn.str() + (rd == 1 ? "" : "/" + rd.str());
  }
  const std::string body = den == 1 ? num.str() : num.str() + "/" + den.str();
  return (sign_ < 0 ? "-" : "+") + std::string("sqrt(") + body + ")";
}

namespace {

class FactorialCache {
 public:
  const BigInt& get(std::size_t n) {
    {
      std::shared_lock lock(mutex_);
      if (n < table_.size()) return table_[n];
    }
    std::unique_lock lock(mutex_);
    if (table_.empty()) table_.emplace_back(1);
    while (table_.size() <= n) table_.push_back(table_.back() * table_.size());
    // deque growth at the back keeps references to existing elements valid
    return table_[n];
  }

 private:
  std::shared_mutex mutex_;
  std::deque<BigInt> table_;
};

FactorialCache& cache() {
  static FactorialCache instance;
  return instance;
}

const BigInt& fact(HalfInt n) { return factorial(static_cast<std::size_t>(n.as_integer())); }

}  // namespace

const BigInt& factorial(std::size_t n) { return cache().get(n); }

bool is_triangle(HalfInt a, HalfInt b, HalfInt x) {
  return (a + b + x).is_integer() && (a - b).abs() <= x && x <= a + b;
}

bool selection_rules(const ThreeJArgs& args) {
  return args.physical() && is_triangle(args.a, args.b, args.x) && args.alpha.abs() <= args.a &&
         args.beta.abs() <= args.b && args.gamma.abs() <= args.x;
}

ExactValue exact_3j(const ThreeJArgs& args, Strictness mode) {
  const bool valid = args.structurally_valid() && selection_rules(args);
  if (!valid) {
    if (mode == Strictness::strict)
      throw Error(Errc::invalid_arguments, "selection rules fail for " + args.str());
    return ExactValue::zero();
  }
  const auto& [a, b, x, alpha, beta, gamma] = args;

  const Rational triangle = Rational(fact(a + b - x) * fact(a - b + x) * fact(-a + b + x)) /
                            fact(a + b + x + HalfInt(1));
  const BigInt projections = fact(a + alpha) * fact(a - alpha) * fact(b + beta) *
                             fact(b - beta) * fact(x + gamma) * fact(x - gamma);

  const HalfInt k_lo = max(HalfInt(0), max(b - x - alpha, a - x + beta));
  const HalfInt k_hi = min(a + b - x, min(a - alpha, b + beta));
  Rational sum = 0;
  for (HalfInt k = k_lo; k <= k_hi; k += HalfInt(1)) {
    const BigInt den = fact(k) * fact(x - b + k + alpha) * fact(x - a + k - beta) *
                       fact(a + b - x - k) * fact(a - k - alpha) * fact(b - k + beta);
    const Rational term(BigInt(1), den);
    if (k.as_integer() % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  if (sum == 0) return ExactValue::zero();

  const int sum_sign = sum > 0 ? 1 : -1;
  const int sign = phase_bit(a - b - gamma) ? -sum_sign : sum_sign;
  return {sign, triangle * projections * sum * sum};
}

ExactValue cg_from_3j(const ThreeJArgs& args, Strictness mode) {
  const ExactValue threej = exact_3j(args, mode);
  if (threej.is_zero()) return threej;
  const HalfInt exponent = args.a - args.b - args.gamma;
  if (!exponent.is_integer())
    throw Error(Errc::invalid_arguments, "non-integral phase a-b-gamma for " + args.str());
  return threej.with_phase(phase_bit(exponent)).times_sqrt(Rational(args.x.twice() + 1));
}

}  // namespace w3j
