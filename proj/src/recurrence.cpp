#include "w3j/recurrence.hpp"

#include <algorithm>
#include <cmath>

#include "w3j/error.hpp"
#include "w3j/exact.hpp"

namespace w3j {

namespace {

double jj1(HalfInt j) { return j.value() * (j.value() + 1.0); }

int sign_of(double v) { return (v > 0) - (v < 0); }

}  // namespace

double delta_coupling(const ScreenSpec& spec, HalfInt delta, DeltaCoefficientForm form) {
  const HalfInt a = spec.a(), b = spec.b(), s = spec.sigma();
  const HalfInt first_shift = form == DeltaCoefficientForm::plus_one ? HalfInt(1) : HalfInt(-1);
  // each factor is a momentum +- its projection, hence an integer
  const std::int64_t f1 = (a - s - delta + first_shift).as_integer();
  const std::int64_t f2 = (a + s + delta).as_integer();
  const std::int64_t f3 = (b + s - delta + HalfInt(1)).as_integer();
  const std::int64_t f4 = (b - s + delta).as_integer();
  if (f1 == 0 || f2 == 0 || f3 == 0 || f4 == 0) return 0.0;
  const long double radicand = static_cast<long double>(f1) * f2 * f3 * f4;
  if (radicand < 0)
    throw Error(Errc::negative_radicand,
                "p(" + delta.str() + ") on screen " + spec.str() + " has radicand " +
                    std::to_string(static_cast<double>(radicand)));
  return static_cast<double>(std::sqrt(radicand));
}

double delta_diagonal(const ScreenSpec& spec, HalfInt x, HalfInt delta) {
  const double s = spec.sigma().value(), d = delta.value();
  return jj1(spec.a()) + jj1(spec.b()) - jj1(x) + 2.0 * (s * s - d * d);
}

DeltaCoefficients delta_coefficients(const ScreenSpec& spec, HalfInt x, HalfInt delta,
                                     DeltaCoefficientForm form) {
  return {delta_coupling(spec, delta, form), delta_diagonal(spec, x, delta)};
}

double x_coupling(const ScreenSpec& spec, HalfInt x) {
  const std::int64_t tx = x.twice();
  const std::int64_t tab = spec.a().twice() - spec.b().twice();
  const std::int64_t tsum1 = spec.a().twice() + spec.b().twice() + 2;
  const std::int64_t ts2 = 2 * spec.sigma().twice();
  // in doubled units: q^2 = n1 n2 n3 / (16 tx^2 (tx^2 - 1))
  const std::int64_t n1 = tx * tx - tab * tab;
  const std::int64_t n2 = tsum1 * tsum1 - tx * tx;
  const std::int64_t n3 = tx * tx - ts2 * ts2;
  if (n1 == 0 || n2 == 0 || n3 == 0) return 0.0;
  const std::int64_t den = tx * tx * (tx * tx - 1);
  if (den == 0)
    throw Error(Errc::singular_x, "q(" + x.str() + ") on screen " + spec.str());
  const long double radicand =
      static_cast<long double>(n1) * n2 * n3 / (16.0L * static_cast<long double>(den));
  if (radicand < 0)
    throw Error(Errc::negative_radicand, "q(" + x.str() + ") on screen " + spec.str());
  return static_cast<double>(std::sqrt(radicand));
}

double x_diagonal(const ScreenSpec& spec, HalfInt x, HalfInt delta) {
  const double numerator = 2.0 * spec.sigma().value() * (jj1(spec.a()) - jj1(spec.b()));
  double first = 0.0;
  if (numerator != 0.0) {
    if (x.twice() == 0) throw Error(Errc::singular_x, "q0(0) on screen " + spec.str());
    first = numerator / jj1(x);
  }
  return first - 2.0 * delta.value();
}

XCoefficients x_coefficients(const ScreenSpec& spec, HalfInt x, HalfInt delta) {
  return {x_coupling(spec, x), x_diagonal(spec, x, delta)};
}

Tridiag build_delta_problem(const ScreenSpec& spec, DeltaCoefficientForm form) {
  Tridiag t;
  const std::size_t n = spec.delta_count();
  const double s = spec.sigma().value();
  for (std::size_t j = 0; j < n; ++j) {
    const HalfInt d = spec.delta_at(j);
    t.labels.push_back(d);
    t.diagonal.push_back(2.0 * (s * s - d.value() * d.value()));
    if (j > 0) t.offdiagonal.push_back(delta_coupling(spec, d, form));
  }
  return t;
}

Tridiag build_x_problem(const ScreenSpec& spec) {
  Tridiag t;
  const std::size_t n = spec.x_count();
  for (std::size_t i = 0; i < n; ++i) {
    const HalfInt x = spec.x_at(i);
    t.labels.push_back(x);
    t.diagonal.push_back(x_diagonal(spec, x, HalfInt(0)));
    if (i > 0) t.offdiagonal.push_back(x_coupling(spec, x));
  }
  return t;
}

std::vector<double> expected_delta_spectrum(const ScreenSpec& spec) {
  std::vector<double> out;
  for (std::size_t i = 0; i < spec.x_count(); ++i)
    out.push_back(jj1(spec.x_at(i)) - jj1(spec.a()) - jj1(spec.b()));
  return out;
}

std::vector<double> expected_x_spectrum(const ScreenSpec& spec) {
  std::vector<double> out;
  for (std::size_t j = 0; j < spec.delta_count(); ++j) out.push_back(2.0 * spec.delta_at(j).value());
  return out;
}

UMatrix::UMatrix(ScreenSpec spec, DenseMatrix values) : spec_(spec), values_(std::move(values)) {
  if (values_.rows() != spec_.x_count() || values_.cols() != spec_.delta_count())
    throw Error(Errc::invalid_arguments, "U matrix shape does not match screen " + spec_.str());
}

double UMatrix::orthogonality_error() const {
  const DenseMatrix t = values_.transposed();
  return std::max((t * values_).identity_deviation(), (values_ * t).identity_deviation());
}

namespace {

void flip_column(DenseMatrix& m, std::size_t i) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
}

void flip_row(DenseMatrix& m, std::size_t j) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = -m(i, j);
}

int anchor_sign(const ScreenSpec& spec) {
  return phase_bit(spec.a() - spec.b() - 2 * spec.sigma()) ? -1 : 1;
}

/// Orients the whole matrix so the largest entry of the x = a+b column has the
/// conventional sign; returns false if that column is identically zero.
bool orient_by_top_column(DenseMatrix& m, const ScreenSpec& spec, bool whole_matrix) {
  const std::size_t top = m.rows() - 1;
  std::size_t best = 0;
  for (std::size_t j = 1; j < m.cols(); ++j)
    if (std::abs(m(top, j)) > std::abs(m(top, best))) best = j;
  if (m(top, best) == 0.0) return false;
  if (sign_of(m(top, best)) != anchor_sign(spec)) {
    if (whole_matrix)
      for (std::size_t i = 0; i < m.rows(); ++i) flip_column(m, i);
    else
      flip_column(m, top);
  }
  return true;
}

void mark_structural_zeros(DenseMatrix& m, const ScreenSpec& spec) {
  // Only symbols fixed by some group element can be forced to zero; a cheap
  // prefilter keeps the orbit search off most cells.
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j)) < 1e-8 && symmetry_forces_zero(spec.args_at(spec.x_at(i), spec.delta_at(j))))
        m(i, j) = 0.0;
}

DenseMatrix solve_by_delta_eigen(const ScreenSpec& spec, DeltaCoefficientForm form) {
  const Tridiag t = build_delta_problem(spec, form);
  const TridiagonalEigen eig = tridiagonal_eigen(t.diagonal, t.offdiagonal);
  const std::size_t n = spec.x_count();
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = eig.vectors(j, i);
  return m;
}

DenseMatrix solve_by_x_eigen(const ScreenSpec& spec, DeltaCoefficientForm form) {
  const Tridiag t = build_x_problem(spec);
  const TridiagonalEigen eig = tridiagonal_eigen(t.diagonal, t.offdiagonal);
  const std::size_t n = spec.x_count();
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = eig.vectors(i, j);

  // Rows arrive with arbitrary signs. Chain them upward from delta_min with the
  // delta-recurrence (p(delta_min) = 0 makes the first step two-term).
  std::vector<double> coupling(n + 1, 0.0);
  for (std::size_t j = 1; j < n; ++j) coupling[j] = delta_coupling(spec, spec.delta_at(j), form);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double below = j > 0 ? m(i, j - 1) : 0.0;
      const double predicted =
          -(delta_diagonal(spec, spec.x_at(i), spec.delta_at(j)) * m(i, j) + coupling[j] * below) /
          coupling[j + 1];
      dot += predicted * m(i, j + 1);
    }
    if (dot < 0) flip_row(m, j + 1);
  }
  if (!orient_by_top_column(m, spec, true))
    throw Error(Errc::zero_anchor, "x = a+b column vanishes on screen " + spec.str());
  return m;
}

std::vector<double> two_sided_column(const ScreenSpec& spec, HalfInt x, DeltaCoefficientForm form) {
  const std::size_t n = spec.delta_count();
  if (n == 1) return {1.0};
  std::vector<double> p(n + 1, 0.0), p0(n);
  for (std::size_t j = 0; j < n; ++j) {
    p[j] = j == 0 ? 0.0 : delta_coupling(spec, spec.delta_at(j), form);
    p0[j] = delta_diagonal(spec, x, spec.delta_at(j));
  }
  constexpr double huge = 1e250;

  // Backward from delta_max while |g| keeps growing (the upper forbidden tail).
  std::vector<double> g(n + 1, 0.0);
  g[n - 1] = 1.0;
  std::size_t match = 0;
  for (std::size_t j = n - 1; j >= 1; --j) {
    g[j - 1] = -(p0[j] * g[j] + p[j + 1] * g[j + 1]) / p[j];
    if (std::abs(g[j - 1]) > huge)
      for (std::size_t k = j - 1; k < n; ++k) g[k] /= huge;
    if (std::abs(g[j - 1]) <= std::abs(g[j])) {
      match = j;
      break;
    }
  }

  std::vector<double> col(n, 0.0);
  if (match == 0) {
    std::copy(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(n), col.begin());
  } else {
    // Forward from delta_min up to the match point.
    std::vector<double> f(match + 1, 0.0);
    f[0] = 1.0;
    for (std::size_t j = 0; j < match; ++j) {
      const double below = j > 0 ? f[j - 1] : 0.0;
      f[j + 1] = -(p0[j] * f[j] + p[j] * below) / p[j + 1];
      if (std::abs(f[j + 1]) > huge)
        for (std::size_t k = 0; k <= j + 1; ++k) f[k] /= huge;
    }
    // least-squares scale over the two overlapping points
    const double num = f[match] * g[match] + f[match - 1] * g[match - 1];
    const double den = g[match] * g[match] + g[match - 1] * g[match - 1];
    const double scale = num / den;
    for (std::size_t j = 0; j < match; ++j) col[j] = f[j];
    for (std::size_t j = match; j < n; ++j) col[j] = scale * g[j];
  }
  double norm = 0.0;
  for (double v : col) norm += v * v;
  norm = std::sqrt(norm);
  for (double& v : col) v /= norm;
  return col;
}

DenseMatrix solve_by_recursion(const ScreenSpec& spec, DeltaCoefficientForm form) {
  const std::size_t n = spec.x_count();
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<double> col = two_sided_column(spec, spec.x_at(i), form);
    for (std::size_t j = 0; j < n; ++j) m(i, j) = col[j];
  }
  return m;
}

}  // namespace

UMatrix sign_convention(const UMatrix& u) {
  const ScreenSpec& spec = u.spec();
  DenseMatrix m = u.values();
  const std::size_t n = m.rows();
  if (!orient_by_top_column(m, spec, false))
    throw Error(Errc::zero_anchor, "x = a+b column vanishes on screen " + spec.str());

  std::vector<double> coupling(n + 1, 0.0);  // coupling[i] = q(x_i)
  for (std::size_t i = 1; i < n; ++i) coupling[i] = x_coupling(spec, spec.x_at(i));
  for (std::size_t i = n - 1; i >= 1; --i) {
    const HalfInt x = spec.x_at(i);
    double dot = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double above = i + 1 < n ? m(i + 1, j) : 0.0;
      const double predicted =
          -(coupling[i + 1] * above + x_diagonal(spec, x, spec.delta_at(j)) * m(i, j)) / coupling[i];
      dot += predicted * m(i - 1, j);
    }
    if (dot < 0) flip_column(m, i - 1);
  }
  return UMatrix(spec, std::move(m));
}

UMatrix solve_screen(const ScreenSpec& spec, SolveOptions options) {
  DenseMatrix m;
  switch (options.method) {
    case SolveMethod::delta_eigen:
      m = sign_convention(UMatrix(spec, solve_by_delta_eigen(spec, options.form))).values();
      break;
    case SolveMethod::x_eigen:
      m = solve_by_x_eigen(spec, options.form);
      break;
    case SolveMethod::recursion:
      m = sign_convention(UMatrix(spec, solve_by_recursion(spec, options.form))).values();
      break;
  }
  mark_structural_zeros(m, spec);
  return UMatrix(spec, std::move(m));
}

double u_value(const ScreenSpec& spec, HalfInt x, HalfInt delta) {
  const ThreeJArgs args = spec.args_at(x, delta);
  return exact_3j(args).times_sqrt(Rational(x.twice() + 1)).to_double();
}

UMatrix oracle_screen(const ScreenSpec& spec) {
  const std::size_t n = spec.x_count();
  DenseMatrix m(n, spec.delta_count());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < spec.delta_count(); ++j)
      m(i, j) = u_value(spec, spec.x_at(i), spec.delta_at(j));
  return UMatrix(spec, std::move(m));
}

double delta_recurrence_residual(const UMatrix& u, DeltaCoefficientForm form) {
  const ScreenSpec& spec = u.spec();
  const std::size_t nd = spec.delta_count();
  double worst = 0.0;
  for (std::size_t i = 0; i < spec.x_count(); ++i)
    for (std::size_t j = 0; j < nd; ++j) {
      const HalfInt d = spec.delta_at(j);
      double r = delta_diagonal(spec, spec.x_at(i), d) * u(i, j);
      if (j + 1 < nd) r += delta_coupling(spec, spec.delta_at(j + 1), form) * u(i, j + 1);
      if (j > 0) r += delta_coupling(spec, d, form) * u(i, j - 1);
      worst = std::max(worst, std::abs(r));
    }
  return worst;
}

double x_recurrence_residual(const UMatrix& u) {
  const ScreenSpec& spec = u.spec();
  const std::size_t nx = spec.x_count();
  double worst = 0.0;
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < spec.delta_count(); ++j) {
      const HalfInt x = spec.x_at(i);
      double r = x_diagonal(spec, x, spec.delta_at(j)) * u(i, j);
      if (i + 1 < nx) r += x_coupling(spec, spec.x_at(i + 1)) * u(i + 1, j);
      if (i > 0) r += x_coupling(spec, x) * u(i - 1, j);
      worst = std::max(worst, std::abs(r));
    }
  return worst;
}

}  // namespace w3j
