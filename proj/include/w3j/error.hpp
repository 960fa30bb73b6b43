#pragma once

#include <stdexcept>
#include <string>

namespace w3j {

enum class Errc {
  parse_error,
  parity_violation,
  invalid_arguments,
  infeasible_spec,
  out_of_screen,
  negative_radicand,
  singular_x,
  eigensolver_failure,
  zero_anchor,
  not_a_triangle,
  imaginary_ridge,
  io_error,
};

const char* errc_name(Errc code) noexcept;

/// Single exception type for the library; `code()` tells callers what failed.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what_arg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what_arg),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace w3j
