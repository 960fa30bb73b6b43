#include "w3j/half_int.hpp"

#include <charconv>

#include "w3j/error.hpp"

namespace w3j {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::parse_error: return "parse-error";
    case Errc::parity_violation: return "parity-violation";
    case Errc::invalid_arguments: return "invalid-arguments";
    case Errc::infeasible_spec: return "infeasible-spec";
    case Errc::out_of_screen: return "out-of-screen";
    case Errc::negative_radicand: return "negative-radicand";
    case Errc::singular_x: return "singular-x";
    case Errc::eigensolver_failure: return "eigensolver-failure";
    case Errc::zero_anchor: return "zero-anchor";
    case Errc::not_a_triangle: return "not-a-triangle";
    case Errc::imaginary_ridge: return "imaginary-ridge";
    case Errc::io_error: return "io-error";
  }
  return "unknown";
}

std::int64_t HalfInt::as_integer() const {
  if (!is_integer()) throw Error(Errc::parity_violation, str() + " is not an integer");
  return twice_ / 2;
}

HalfInt HalfInt::halved() const {
  if (!halvable()) throw Error(Errc::parity_violation, str() + "/2 is off the half-integer lattice");
  return from_twice(twice_ / 2);
}

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

std::string HalfInt::decimal() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  const std::int64_t mag = twice_ < 0 ? -twice_ : twice_;
  return std::string(twice_ < 0 ? "-" : "") + std::to_string(mag / 2) + ".5";
}

int phase_bit(HalfInt exponent) {
  const std::int64_t e = exponent.as_integer();
  return static_cast<int>(((e % 2) + 2) % 2);
}

namespace {

bool parse_digits(std::string_view s, std::int64_t& out) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

[[noreturn]] void reject(std::string_view token, const char* why) {
  throw Error(Errc::parse_error, "'" + std::string(token) + "': " + why);
}

}  // namespace

HalfInt parse_half_int(std::string_view token) {
  std::string_view s = token;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) reject(token, "empty value");

  std::int64_t twice = 0;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::int64_t num = 0, den = 0;
    if (!parse_digits(s.substr(0, slash), num) || !parse_digits(s.substr(slash + 1), den))
      reject(token, "malformed fraction");
    if (den == 1)
      twice = 2 * num;
    else if (den == 2)
      twice = num;
    else
      reject(token, "only denominators 1 and 2 are allowed");
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::int64_t whole = 0;
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (!int_part.empty() && !parse_digits(int_part, whole)) reject(token, "malformed decimal");
    if (int_part.empty() && frac.empty()) reject(token, "malformed decimal");
    std::int64_t frac_digits = 0;
    if (!frac.empty() && !parse_digits(frac, frac_digits)) reject(token, "malformed decimal");
    twice = 2 * whole;
    if (!frac.empty()) {
      const bool half = frac.front() == '5';
      if (frac.front() != '0' && !half) reject(token, "only .0 and .5 decimals are allowed");
      for (char c : frac.substr(1))
        if (c != '0') reject(token, "only .0 and .5 decimals are allowed");
      if (half) twice += 1;
    }
  } else {
    std::int64_t whole = 0;
    if (!parse_digits(s, whole)) reject(token, "not a number");
    twice = 2 * whole;
  }
  return HalfInt::from_twice(negative ? -twice : twice);
}

}  // namespace w3j
