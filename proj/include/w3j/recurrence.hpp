#pragma once

#include <string>
#include <vector>

#include "w3j/half_int.hpp"
#include "w3j/symmetry.hpp"
#include "w3j/tridiagonal.hpp"

namespace w3j {

/// Which first factor p(delta) uses under the square root.
/// `plus_one` is (a-sigma-delta+1); `minus_one` is (a-sigma-delta-1), the
/// variant that fails boundary vanishing and oracle annihilation. It exists
/// only as a negative control.
enum class DeltaCoefficientForm { plus_one, minus_one };

struct DeltaCoefficients {
  double p;   // p(delta): couples delta-1 and delta
  double p0;  // p0(delta) at fixed x
};

struct XCoefficients {
  double q;   // q(x): couples x-1 and x
  double q0;  // q0(x) at fixed delta
};

/// p(delta) = sqrt[(a-s-d+1)(a+s+d)(b+s-d+1)(b-s+d)]; exactly 0 at delta_min
/// and delta_max+1. Throws negative_radicand.
double delta_coupling(const ScreenSpec& spec, HalfInt delta,
                      DeltaCoefficientForm form = DeltaCoefficientForm::plus_one);
/// p0 = a(a+1) + b(b+1) - x(x+1) + 2(s^2 - d^2)
double delta_diagonal(const ScreenSpec& spec, HalfInt x, HalfInt delta);
DeltaCoefficients delta_coefficients(const ScreenSpec& spec, HalfInt x, HalfInt delta,
                                     DeltaCoefficientForm form = DeltaCoefficientForm::plus_one);

/// q(x) = sqrt{[x^2-(a-b)^2][(a+b+1)^2-x^2][x^2-4s^2]} / (x sqrt(4x^2-1));
/// exactly 0 at x_min and x_max+1. Throws singular_x or negative_radicand.
double x_coupling(const ScreenSpec& spec, HalfInt x);
/// q0 = 2s[a(a+1)-b(b+1)]/(x(x+1)) - 2d; the first term is dropped when its
/// numerator vanishes (the x = 0 screens).
double x_diagonal(const ScreenSpec& spec, HalfInt x, HalfInt delta);
XCoefficients x_coefficients(const ScreenSpec& spec, HalfInt x, HalfInt delta);

struct Tridiag {
  std::vector<double> diagonal;
  std::vector<double> offdiagonal;
  std::vector<HalfInt> labels;
};

/// Fixed-x problem in delta: diagonal 2(s^2-d^2), off-diagonal p. Its spectrum
/// is {x(x+1)-a(a+1)-b(b+1)} over the x-range, so one matrix serves every x.
Tridiag build_delta_problem(const ScreenSpec& spec,
                            DeltaCoefficientForm form = DeltaCoefficientForm::plus_one);
/// Fixed-delta problem in x: diagonal 2s[a(a+1)-b(b+1)]/(x(x+1)), off-diagonal q.
/// Its spectrum is {2 delta} over the delta-range.
Tridiag build_x_problem(const ScreenSpec& spec);

std::vector<double> expected_delta_spectrum(const ScreenSpec& spec);
std::vector<double> expected_x_spectrum(const ScreenSpec& spec);

/// U(x, delta) = sqrt(2x+1) 3j(a b x; s+d s-d -2s) on one screen.
/// Row index is x - x_min, column index is delta - delta_min.
class UMatrix {
 public:
  UMatrix(ScreenSpec spec, DenseMatrix values);

  const ScreenSpec& spec() const { return spec_; }
  const DenseMatrix& values() const { return values_; }
  std::size_t side() const { return values_.rows(); }

  double at(HalfInt x, HalfInt delta) const {
    return values_(spec_.x_index(x), spec_.delta_index(delta));
  }
  double operator()(std::size_t xi, std::size_t dj) const { return values_(xi, dj); }

  /// max over |U^T U - I| and |U U^T - I|
  double orthogonality_error() const;

 private:
  ScreenSpec spec_;
  DenseMatrix values_;
};

enum class SolveMethod {
  delta_eigen,  // eigenvectors of the delta problem are the x-columns
  x_eigen,      // eigenvectors of the x problem are the delta-rows
  recursion,    // two-sided delta recursion per column, matched and normalized
};

struct SolveOptions {
  SolveMethod method = SolveMethod::delta_eigen;
  DeltaCoefficientForm form = DeltaCoefficientForm::plus_one;
};

/// Whole screen from the recurrences only; the exact oracle is never called.
/// Entries forced to zero by a symmetry are stored as exact zeros.
UMatrix solve_screen(const ScreenSpec& spec, SolveOptions options = {});

/// Fixes per-column signs: the x = a+b column carries (-1)^(a-b-2s), anchored at
/// its largest entry; each lower column is oriented against the x-recurrence
/// prediction from the two columns above it.
UMatrix sign_convention(const UMatrix& u);

/// sqrt(2x+1) * exact 3j, converted to binary64.
double u_value(const ScreenSpec& spec, HalfInt x, HalfInt delta);
/// Whole screen from the exact oracle.
UMatrix oracle_screen(const ScreenSpec& spec);

/// Largest |p(d+1)U(d+1) + p0 U(d) + p(d)U(d-1)| over all grid points.
double delta_recurrence_residual(const UMatrix& u,
                                 DeltaCoefficientForm form = DeltaCoefficientForm::plus_one);
/// Largest |q(x+1)U(x+1) + q0 U(x) + q(x)U(x-1)| over all grid points.
double x_recurrence_residual(const UMatrix& u);

}  // namespace w3j
