#include "w3j/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "w3j/error.hpp"

namespace w3j {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix operator*(const DenseMatrix& l, const DenseMatrix& r) {
  if (l.cols_ != r.rows_) throw Error(Errc::invalid_arguments, "matrix shape mismatch");
  DenseMatrix out(l.rows_, r.cols_);
  for (std::size_t i = 0; i < l.rows_; ++i)
    for (std::size_t k = 0; k < l.cols_; ++k) {
      const double lik = l(i, k);
      for (std::size_t j = 0; j < r.cols_; ++j) out(i, j) += lik * r(k, j);
    }
  return out;
}

double DenseMatrix::identity_deviation() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      worst = std::max(worst, std::abs((*this)(i, j) - (i == j ? 1.0 : 0.0)));
  return worst;
}

double DenseMatrix::max_abs() const {
  double worst = 0.0;
  for (double v : data_) worst = std::max(worst, std::abs(v));
  return worst;
}

TridiagonalEigen tridiagonal_eigen(std::span<const double> diagonal,
                                   std::span<const double> offdiagonal, int max_iterations) {
  const std::size_t n = diagonal.size();
  if (n > 0 && offdiagonal.size() + 1 != n)
    throw Error(Errc::invalid_arguments, "off-diagonal must be one shorter than the diagonal");

  std::vector<double> d(diagonal.begin(), diagonal.end());
  std::vector<double> e(n, 0.0);
  std::copy(offdiagonal.begin(), offdiagonal.end(), e.begin());
  DenseMatrix v = DenseMatrix::identity(n);

  const double eps = std::numeric_limits<double>::epsilon();
  double shift_total = 0.0;
  double tst1 = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n && std::abs(e[m]) > eps * tst1) ++m;
    if (m == n) m = n - 1;

    if (m > l) {
      int iter = 0;
      do {
        if (++iter > max_iterations)
          throw Error(Errc::eigensolver_failure,
                      "QL did not converge for eigenvalue " + std::to_string(l) + " of " +
                          std::to_string(n));
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        shift_total += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t i = m; i-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          for (std::size_t k = 0; k < n; ++k) {
            h = v(k, i + 1);
            v(k, i + 1) = s * v(k, i) + c * h;
            v(k, i) = c * v(k, i) - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += shift_total;
    e[l] = 0.0;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return d[i] < d[j]; });

  TridiagonalEigen out{std::vector<double>(n), DenseMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = d[order[k]];
    for (std::size_t row = 0; row < n; ++row) out.vectors(row, k) = v(row, order[k]);
  }
  return out;
}

}  // namespace w3j
