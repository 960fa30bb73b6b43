#include "w3j/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "w3j/error.hpp"
#include "w3j/exact.hpp"

namespace w3j {

std::vector<ScreenSpec> canonical_specs(HalfInt max_a, HalfInt max_b) {
  std::vector<ScreenSpec> out;
  for (std::int64_t ta = 0; ta <= max_a.twice(); ++ta)
    for (std::int64_t tb = ta; tb <= max_b.twice(); tb += 2) {
      if ((ta + tb) % 2 != 0) continue;
      for (std::int64_t ts = 0; ts <= (tb - ta) / 2; ++ts)
        out.push_back(ScreenSpec::make(HalfInt::from_twice(ta), HalfInt::from_twice(tb),
                                       HalfInt::from_twice(ts)));
    }
  return out;
}

bool orbit_phases_consistent(const ThreeJArgs& args) {
  const ExactValue source = exact_3j(args);
  for (const SymmetryRecord& m : orbit(args).members)
    if (exact_3j(m.target).with_phase(m.phase) != source) return false;
  return true;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Runs `body` for each spec, folding its error into the suite; exceptions
/// fail the suite and keep the first message.
void run_suite(SuiteResult& suite, const std::vector<ScreenSpec>& specs,
               const std::function<double(const ScreenSpec&)>& body) {
  for (const ScreenSpec& spec : specs) {
    double err = kInf;
    try {
      err = body(spec);
    } catch (const Error& e) {
      if (suite.note.empty()) suite.note = spec.str() + ": " + e.what();
    }
    if (!(err <= suite.tolerance) && suite.note.empty())
      suite.note = "first failure at " + spec.str();
    suite.max_error = std::max(suite.max_error, err);
  }
  suite.passed = suite.max_error <= suite.tolerance;
}

double max_entry_diff(const UMatrix& l, const UMatrix& r) {
  double worst = 0.0;
  for (std::size_t i = 0; i < l.side(); ++i)
    for (std::size_t j = 0; j < l.side(); ++j) worst = std::max(worst, std::abs(l(i, j) - r(i, j)));
  return worst;
}

double spectrum_error(const Tridiag& t, const std::vector<double>& expected) {
  const TridiagonalEigen eig = tridiagonal_eigen(t.diagonal, t.offdiagonal);
  double scale = 1.0;
  for (double v : expected) scale = std::max(scale, std::abs(v));
  double worst = 0.0;
  for (std::size_t k = 0; k < expected.size(); ++k)
    worst = std::max(worst, std::abs(eig.values[k] - expected[k]) / scale);
  return worst;
}

bool boundaries_vanish(const ScreenSpec& spec, DeltaCoefficientForm form) {
  auto p_at = [&](HalfInt d) {
    try {
      return delta_coupling(spec, d, form);
    } catch (const Error&) {
      return kInf;
    }
  };
  return p_at(spec.delta_min()) == 0.0 && p_at(spec.delta_max() + HalfInt(1)) == 0.0 &&
         x_coupling(spec, spec.x_min()) == 0.0 && x_coupling(spec, spec.x_max() + HalfInt(1)) == 0.0;
}

}  // namespace

std::vector<SuiteResult> run_verification(const VerifyOptions& options) {
  const std::vector<ScreenSpec> specs = canonical_specs(options.max_a, options.max_b);
  std::vector<SuiteResult> suites;

  SuiteResult oracle{"oracle-equivalence", 0.0, options.tolerance, true, {}};
  SuiteResult orth{"orthogonality", 0.0, options.tolerance, true, {}};
  {
    // one solve per spec feeds both suites
    std::vector<std::pair<ScreenSpec, UMatrix>> solved;
    run_suite(orth, specs, [&](const ScreenSpec& spec) {
      UMatrix u = solve_screen(spec, {SolveMethod::delta_eigen, options.form});
      const double e = u.orthogonality_error();
      solved.emplace_back(spec, std::move(u));
      return e;
    });
    std::vector<ScreenSpec> solved_specs;
    for (const auto& [spec, _] : solved) solved_specs.push_back(spec);
    std::size_t k = 0;
    run_suite(oracle, solved_specs,
              [&](const ScreenSpec& spec) { return max_entry_diff(solved[k++].second, oracle_screen(spec)); });
    if (solved.size() != specs.size()) {
      oracle.passed = false;
      oracle.max_error = kInf;
      if (oracle.note.empty()) oracle.note = orth.note;
    }
  }
  suites.push_back(oracle);
  suites.push_back(orth);

  SuiteResult spectrum{"spectrum", 0.0, 1e-9, true, {}};
  run_suite(spectrum, specs, [&](const ScreenSpec& spec) {
    return std::max(spectrum_error(build_delta_problem(spec, options.form), expected_delta_spectrum(spec)),
                    spectrum_error(build_x_problem(spec), expected_x_spectrum(spec)));
  });
  suites.push_back(spectrum);

  SuiteResult annihilation{"annihilation", 0.0, 1e-10, true, {}};
  run_suite(annihilation, specs, [&](const ScreenSpec& spec) {
    if (!boundaries_vanish(spec, options.form))
      throw Error(Errc::negative_radicand, "outward coefficient does not vanish at a boundary");
    const UMatrix exact = oracle_screen(spec);
    const double scale = exact.values().max_abs();
    return std::max(delta_recurrence_residual(exact, options.form), x_recurrence_residual(exact)) / scale;
  });
  suites.push_back(annihilation);

  SuiteResult regge{"regge-orbit", 0.0, 0.0, true, {}};
  run_suite(regge, specs, [&](const ScreenSpec& spec) {
    const std::size_t n = spec.x_count();
    const std::size_t stride = std::max<std::size_t>(1, n * n / 8);
    for (std::size_t cell = 0; cell < n * n; cell += stride) {
      const ThreeJArgs args = spec.args_at(spec.x_at(cell / n), spec.delta_at(cell % n));
      if (!orbit_phases_consistent(args)) return kInf;
    }
    return 0.0;
  });
  suites.push_back(regge);
  return suites;
}

}  // namespace w3j
