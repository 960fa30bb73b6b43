#include "w3j/semiclassics.hpp"

#include <algorithm>
#include <cmath>

#include "w3j/error.hpp"

namespace w3j {

GeomSpec GeomSpec::from_momenta(HalfInt a, HalfInt b, HalfInt sigma) {
  const HalfInt half = HalfInt::from_twice(1);
  return {a + half, b + half, sigma};
}

std::pair<double, double> GeomSpec::caustic_support() const {
  const double lo = std::max(std::abs(j1() - j2()), 2.0 * std::abs(s()));
  return {lo, j1() + j2()};
}

double heron_area_squared(double J1, double J2, double J3) {
  return (J1 + J2 + J3) * (-J1 + J2 + J3) * (J1 - J2 + J3) * (J1 + J2 - J3) / 16.0;
}

double heron_area(double J1, double J2, double J3) {
  const double f2 = heron_area_squared(J1, J2, J3);
  if (f2 < 0) throw Error(Errc::not_a_triangle, "sides violate the triangle inequality");
  return std::sqrt(f2);
}

double oriented_area_squared(const GeomSpec& geom, double J3, double delta) {
  const double J1 = geom.j1(), J2 = geom.j2(), s = geom.s(), d = delta;
  return heron_area_squared(J1, J2, J3) + (s * s - d * d) * J3 * J3 / 4.0 -
         s * ((s + d) * J2 * J2 + (s - d) * J1 * J1) / 2.0;
}

double oriented_area_squared_determinant(const GeomSpec& geom, double J3, double delta) {
  const double alpha = geom.s() + delta, beta = geom.s() - delta;
  const double d12 = geom.j1() * geom.j1() - alpha * alpha;
  const double d13 = geom.j2() * geom.j2() - beta * beta;
  const double d23 = J3 * J3 - (alpha + beta) * (alpha + beta);
  double a[4][4] = {
      {0, d12, d13, 1}, {d12, 0, d23, 1}, {d13, d23, 0, 1}, {1, 1, 1, 0}};

  // partial-pivot elimination
  double det = 1.0;
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    for (int r = c + 1; r < 4; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    if (a[piv][c] == 0.0) return 0.0;
    if (piv != c) {
      for (int k = 0; k < 4; ++k) std::swap(a[piv][k], a[c][k]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < 4; ++r) {
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < 4; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return -det / 16.0;
}

double ridge_delta(const GeomSpec& geom, double J3) {
  return geom.s() * (geom.j1() * geom.j1() - geom.j2() * geom.j2()) / (J3 * J3);
}

double ridge_x(const GeomSpec& geom, double delta) {
  const double s = geom.s();
  const double radicand = geom.j1() * geom.j1() + geom.j2() * geom.j2() + 2.0 * (s * s - delta * delta);
  if (radicand < 0) throw Error(Errc::imaginary_ridge, "J3*(delta) radicand is negative");
  return std::sqrt(radicand);
}

std::optional<CausticBranches> caustic_delta(const GeomSpec& geom, double J3) {
  const double f2 = heron_area_squared(geom.j1(), geom.j2(), J3);
  const double width2 = J3 * J3 - 4.0 * geom.s() * geom.s();
  if (J3 <= 0 || f2 < 0 || width2 < 0) return std::nullopt;
  const double centre = ridge_delta(geom, J3);
  const double half = 2.0 * std::sqrt(f2) * std::sqrt(width2) / (J3 * J3);
  return CausticBranches{centre - half, centre + half};
}

std::vector<HalfInt> cusp_sigma(const GeomSpec& geom) {
  const HalfInt diff = geom.J1 - geom.J2;
  if (!diff.halvable()) return {};
  const HalfInt s = diff.halved();
  if (2 * s.abs() > geom.J1 + geom.J2) return {};
  if (s == HalfInt(0)) return {s};
  return {-s.abs(), s.abs()};
}

bool has_cusp(const GeomSpec& geom) {
  const auto cusps = cusp_sigma(geom);
  return std::find(cusps.begin(), cusps.end(), geom.sigma) != cusps.end();
}

std::optional<CuspPoint> cusp_point(const GeomSpec& geom) {
  if (!has_cusp(geom) || geom.J1 == geom.J2) return std::nullopt;
  const double J1 = geom.j1(), J2 = geom.j2();
  return CuspPoint{std::abs(J1 - J2), geom.s() * (J1 + J2) / (J1 - J2)};
}

Region classify_point(const GeomSpec& geom, double J3, double delta) {
  const double s2 = oriented_area_squared(geom, J3, delta);
  const double eps = 1e-9 * std::max(1.0, std::pow(J3, 4));
  if (s2 > eps) return Region::classical;
  if (s2 < -eps) return Region::forbidden;
  return Region::caustic;
}

namespace {

CausticSample sample_at(const GeomSpec& geom, double J3) {
  if (auto br = caustic_delta(geom, J3)) return {J3, br->delta_minus, br->delta_plus};
  // rounding at an endpoint can push a radicand to -0; the branches meet there
  const double c = ridge_delta(geom, J3);
  return {J3, c, c};
}

}  // namespace

CausticCurve sample_caustic(const GeomSpec& geom, int samples_per_unit, double gap) {
  CausticCurve curve;
  curve.cusp_flag = has_cusp(geom);
  auto [lo, hi] = geom.caustic_support();
  if (lo > hi || hi <= 0) return curve;
  // J3 = 0 only arises for J1 = J2, sigma = 0, where the branches tend to +-J1
  if (lo == 0.0) lo = 1e-9;
  if (lo == hi) {
    curve.samples.push_back(sample_at(geom, lo));
    return curve;
  }

  const int steps = std::max(1, static_cast<int>(std::ceil((hi - lo) * samples_per_unit)));
  std::vector<double> grid;
  for (int k = 0; k <= steps; ++k) grid.push_back(lo + (hi - lo) * k / steps);
  grid.back() = hi;

  auto branch_gap = [&](double J3) {
    const CausticSample s = sample_at(geom, J3);
    return s.delta_plus - s.delta_minus;
  };
  std::vector<double> extra;
  for (const auto& [end, inner] : {std::pair{lo, grid[1]}, std::pair{hi, grid[grid.size() - 2]}}) {
    double probe = inner;
    for (int it = 0; it < 60 && branch_gap(probe) >= gap && std::abs(probe - end) > 1e-12; ++it) {
      probe = 0.5 * (probe + end);
      extra.push_back(probe);
    }
  }
  grid.insert(grid.end(), extra.begin(), extra.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  for (double J3 : grid) curve.samples.push_back(sample_at(geom, J3));
  return curve;
}

std::vector<RidgePoint> sample_ridge_delta(const GeomSpec& geom, int samples_per_unit) {
  std::vector<RidgePoint> out;
  const auto [lo, hi] = geom.caustic_support();
  if (lo > hi || hi <= 0) return out;
  const double start = std::max(lo, 1e-12);
  const int steps = std::max(1, static_cast<int>(std::ceil((hi - start) * samples_per_unit)));
  for (int k = 0; k <= steps; ++k) {
    const double J3 = start + (hi - start) * k / steps;
    out.push_back({J3, ridge_delta(geom, J3)});
  }
  return out;
}

std::vector<RidgePoint> sample_ridge_x(const GeomSpec& geom, double delta_lo, double delta_hi,
                                       int samples_per_unit) {
  std::vector<RidgePoint> out;
  if (delta_hi < delta_lo) return out;
  const int steps = std::max(1, static_cast<int>(std::ceil((delta_hi - delta_lo) * samples_per_unit)));
  for (int k = 0; k <= steps; ++k) {
    const double d = delta_lo + (delta_hi - delta_lo) * k / steps;
    const double s = geom.s();
    const double radicand = geom.j1() * geom.j1() + geom.j2() * geom.j2() + 2.0 * (s * s - d * d);
    if (radicand >= 0) out.push_back({d, std::sqrt(radicand)});
  }
  return out;
}

}  // namespace w3j
