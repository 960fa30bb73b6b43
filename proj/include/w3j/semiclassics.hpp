#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "w3j/half_int.hpp"

namespace w3j {

/// Semiclassical lengths J1 = a + 1/2, J2 = b + 1/2 and the screen's sigma.
struct GeomSpec {
  HalfInt J1;
  HalfInt J2;
  HalfInt sigma;

  static GeomSpec from_momenta(HalfInt a, HalfInt b, HalfInt sigma);

  double j1() const { return J1.value(); }
  double j2() const { return J2.value(); }
  double s() const { return sigma.value(); }
  /// Continuous J3 interval where the caustic is real:
  /// [max(|J1-J2|, 2|sigma|), J1+J2]; empty when lo > hi.
  std::pair<double, double> caustic_support() const;
};

/// Heron's area of the triangle with sides (J1, J2, J3). Throws not_a_triangle.
double heron_area(double J1, double J2, double J3);
/// The radicand/16, negative outside the triangle inequalities.
double heron_area_squared(double J1, double J2, double J3);

/// S^2 = F^2 + (s^2-d^2) J3^2/4 - s[(s+d) J2^2 + (s-d) J1^2]/2
double oriented_area_squared(const GeomSpec& geom, double J3, double delta);
/// The same quantity as -1/16 times the 4x4 bordered (Cayley-Menger) determinant.
double oriented_area_squared_determinant(const GeomSpec& geom, double J3, double delta);

/// delta*(J3) = s (J1^2 - J2^2) / J3^2
double ridge_delta(const GeomSpec& geom, double J3);
/// J3*(delta) = sqrt(J1^2 + J2^2 + 2(s^2 - delta^2)); throws imaginary_ridge.
double ridge_x(const GeomSpec& geom, double delta);

struct CausticBranches {
  double delta_minus;
  double delta_plus;
};

/// delta_pm = delta* +- 2F sqrt(J3^2 - 4s^2) / J3^2, or nullopt where complex.
std::optional<CausticBranches> caustic_delta(const GeomSpec& geom, double J3);

/// {+(J1-J2)/2, -(J1-J2)/2} when on the lattice and |sigma| <= (J1+J2)/2.
std::vector<HalfInt> cusp_sigma(const GeomSpec& geom);
bool has_cusp(const GeomSpec& geom);

struct CuspPoint {
  double J3;
  double delta;
};
/// Where the two branches meet with a double zero: J3 = |J1-J2|,
/// delta = s (J1+J2)/(J1-J2). For J1 != J2 the cusp is in the upper-left
/// corner when s (J1-J2) > 0 and the lower-left corner otherwise.
std::optional<CuspPoint> cusp_point(const GeomSpec& geom);

enum class Region { classical, forbidden, caustic };

/// Band half-width 1e-9 * max(1, J3^4) around S^2 = 0.
Region classify_point(const GeomSpec& geom, double J3, double delta);

struct CausticSample {
  double J3;
  double delta_minus;
  double delta_plus;
};

struct CausticCurve {
  std::vector<CausticSample> samples;  // ascending J3
  bool cusp_flag = false;
};

/// Uniform samples over the caustic support (endpoints included) refined by
/// bisection toward each endpoint until the branch gap falls below `gap`.
CausticCurve sample_caustic(const GeomSpec& geom, int samples_per_unit = 16, double gap = 1e-6);

struct RidgePoint {
  double u;  // the abscissa being followed (J3 or delta)
  double v;  // the ridge value
};

/// delta*(J3) sampled over the caustic support.
std::vector<RidgePoint> sample_ridge_delta(const GeomSpec& geom, int samples_per_unit = 16);
/// J3*(delta) sampled over [delta_lo, delta_hi] where real.
std::vector<RidgePoint> sample_ridge_x(const GeomSpec& geom, double delta_lo, double delta_hi,
                                       int samples_per_unit = 16);

}  // namespace w3j
