#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <string_view>

namespace w3j {

/// An integer or half-odd-integer, stored as twice its value.
///
/// All angular momenta and projections live on this lattice, so range
/// and parity arithmetic never touches floating point.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr HalfInt(int value) : twice_(2 * static_cast<std::int64_t>(value)) {}

  static constexpr HalfInt from_twice(std::int64_t twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }

  constexpr std::int64_t twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double value() const { return static_cast<double>(twice_) / 2.0; }

  /// The integer value; throws parity_violation for half-odd values.
  std::int64_t as_integer() const;

  /// Half of this value; throws parity_violation when it would leave the lattice.
  HalfInt halved() const;
  constexpr bool halvable() const { return twice_ % 2 == 0; }

  constexpr HalfInt abs() const { return from_twice(twice_ < 0 ? -twice_ : twice_); }

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr HalfInt& operator+=(HalfInt o) {
    twice_ += o.twice_;
    return *this;
  }
  constexpr HalfInt& operator-=(HalfInt o) {
    twice_ -= o.twice_;
    return *this;
  }
  friend constexpr HalfInt operator+(HalfInt l, HalfInt r) { return l += r; }
  friend constexpr HalfInt operator-(HalfInt l, HalfInt r) { return l -= r; }
  /// Doubling stays on the lattice (and lands on the integers).
  friend constexpr HalfInt operator*(int k, HalfInt h) { return from_twice(k * h.twice_); }

  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

  /// "3", "-3/2", "0".
  std::string str() const;
  /// "3", "-1.5": used in CSV output and file names.
  std::string decimal() const;

 private:
  std::int64_t twice_ = 0;
};

constexpr HalfInt max(HalfInt a, HalfInt b) { return a < b ? b : a; }
constexpr HalfInt min(HalfInt a, HalfInt b) { return a < b ? a : b; }

/// True when v is an integer (used for phase exponents).
constexpr bool integral(HalfInt v) { return v.is_integer(); }

/// (-1)^e for an integral exponent, reduced to {0, 1}.
int phase_bit(HalfInt exponent);

/// Parses "3", "-3/2", "1.5", ".5", "-0.5". Denominators other than 1 or 2
/// and decimals other than .0/.5 are rejected with Errc::parse_error.
HalfInt parse_half_int(std::string_view token);

}  // namespace w3j
