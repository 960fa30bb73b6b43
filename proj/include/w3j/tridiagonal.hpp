#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace w3j {

/// Row-major dense matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  DenseMatrix transposed() const;
  friend DenseMatrix operator*(const DenseMatrix& l, const DenseMatrix& r);

  /// max |M - I|
  double identity_deviation() const;
  double max_abs() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

struct TridiagonalEigen {
  std::vector<double> values;  // ascending
  DenseMatrix vectors;         // column k belongs to values[k]
};

/// Eigen-decomposition of a symmetric tridiagonal matrix by implicit-shift QL
/// (EISPACK tql2 without the Householder stage). `offdiagonal[k]` couples
/// rows k and k+1. Throws Errc::eigensolver_failure if an eigenvalue needs more
/// than `max_iterations` sweeps.
TridiagonalEigen tridiagonal_eigen(std::span<const double> diagonal,
                                   std::span<const double> offdiagonal,
                                   int max_iterations = 60);

}  // namespace w3j
