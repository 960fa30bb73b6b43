#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "w3j/error.hpp"
#include "w3j/tridiagonal.hpp"

using namespace w3j;

namespace {

void compare_with_eigen(const std::vector<double>& d, const std::vector<double>& e) {
  const auto n = static_cast<Eigen::Index>(d.size());
  Eigen::VectorXd dv = Eigen::Map<const Eigen::VectorXd>(d.data(), n);
  Eigen::VectorXd ev = n > 1 ? Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(e.data(), n - 1))
                             : Eigen::VectorXd(0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref;
  ref.computeFromTridiagonal(dv, ev, Eigen::ComputeEigenvectors);
  REQUIRE(ref.info() == Eigen::Success);

  const TridiagonalEigen mine = tridiagonal_eigen(d, e);
  double scale = 1.0;
  for (double v : d) scale = std::max(scale, std::abs(v));
  for (double v : e) scale = std::max(scale, std::abs(v));

  for (Eigen::Index k = 0; k < n; ++k) {
    CHECK(std::abs(mine.values[k] - ref.eigenvalues()[k]) <= 1e-12 * scale);
    // residual |T v - lambda v| is sign-independent and robust to near-degeneracy
    double res = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double tv = d[i] * mine.vectors(i, k);
      if (i > 0) tv += e[i - 1] * mine.vectors(i - 1, k);
      if (i + 1 < n) tv += e[i] * mine.vectors(i + 1, k);
      res = std::max(res, std::abs(tv - mine.values[k] * mine.vectors(i, k)));
    }
    CHECK(res <= 1e-12 * scale);
  }
  CHECK((mine.vectors.transposed() * mine.vectors).identity_deviation() <= 1e-13 * std::max<double>(1, n));
}

}  // namespace

TEST_CASE("small fixed matrices") {
  const TridiagonalEigen one = tridiagonal_eigen(std::vector<double>{3.5}, std::vector<double>{});
  CHECK(one.values[0] == 3.5);
  CHECK(std::abs(one.vectors(0, 0)) == 1.0);

  const TridiagonalEigen two = tridiagonal_eigen(std::vector<double>{0, 0}, std::vector<double>{1});
  CHECK(two.values[0] == doctest::Approx(-1));
  CHECK(two.values[1] == doctest::Approx(1));

  compare_with_eigen({2, -1, 4, 0}, {1, 0, 3});  // split at a zero coupling
}

TEST_CASE("random tridiagonals match Eigen") {
  std::mt19937 rng(13);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 120;
    std::vector<double> d(n), e(n > 0 ? n - 1 : 0);
    for (auto& v : d) v = 10 * g(rng);
    for (auto& v : e) v = 10 * g(rng);
    compare_with_eigen(d, e);
  }
}

TEST_CASE("clustered and degenerate spectra") {
  // Wilkinson W21+ has pairs of nearly equal eigenvalues
  std::vector<double> d(21), e(20, 1.0);
  for (int i = 0; i < 21; ++i) d[i] = std::abs(10 - i);
  compare_with_eigen(d, e);
  compare_with_eigen(std::vector<double>(30, 2.0), std::vector<double>(29, 0.0));
}

TEST_CASE("bad input") {
  CHECK_THROWS_AS(tridiagonal_eigen(std::vector<double>{1, 2}, std::vector<double>{}), Error);
  CHECK_THROWS_AS(tridiagonal_eigen(std::vector<double>{1, 2, 3}, std::vector<double>{1, 1}, 0), Error);
}

TEST_CASE("DenseMatrix helpers") {
  DenseMatrix m(2, 3);
  m(0, 1) = 2;
  m(1, 2) = -5;
  CHECK(m.transposed()(1, 0) == 2);
  CHECK(m.max_abs() == 5);
  CHECK(DenseMatrix::identity(4).identity_deviation() == 0);
  const DenseMatrix p = m * m.transposed();
  CHECK(p.rows() == 2);
  CHECK(p(1, 1) == 25);
}
