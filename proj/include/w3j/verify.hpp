#pragma once

#include <string>
#include <vector>

#include "w3j/half_int.hpp"
#include "w3j/recurrence.hpp"
#include "w3j/symmetry.hpp"

namespace w3j {

struct SuiteResult {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  std::string note;  // first failure message, if any
};

struct VerifyOptions {
  HalfInt max_a = 4;
  HalfInt max_b = 4;
  double tolerance = 1e-12;  // oracle equivalence and orthogonality
  DeltaCoefficientForm form = DeltaCoefficientForm::plus_one;
};

/// Every canonical (a, b, sigma) with a <= max_a and b <= max_b.
std::vector<ScreenSpec> canonical_specs(HalfInt max_a, HalfInt max_b);

/// Oracle equivalence, orthogonality, spectrum, annihilation, Regge orbit.
std::vector<SuiteResult> run_verification(const VerifyOptions& options);

/// Exact check that value(source) = (-1)^phase value(target) for every orbit member.
bool orbit_phases_consistent(const ThreeJArgs& args);

}  // namespace w3j
