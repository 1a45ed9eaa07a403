#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "superperiods/ball.hpp"

namespace superperiods {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using RealMatrix = Matrix<Real>;
using ComplexMatrix = Matrix<Complex>;
using IntMatrix = Matrix<int64_t>;

// Solves A X = B by Gaussian elimination with partial pivoting.
// Throws PrecisionError if some pivot ball contains zero.
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);
RealMatrix inverse(const RealMatrix& a);
// Certified Cholesky: true iff every pivot is certainly positive.
bool certified_positive_definite(const RealMatrix& a);

IntMatrix int_identity(std::size_t n);
IntMatrix int_multiply(const IntMatrix& a, const IntMatrix& b);
IntMatrix int_transpose(const IntMatrix& a);
// Exact determinant via fraction-free elimination (Bareiss).
int64_t int_determinant(const IntMatrix& a);
// Rank over Q.
std::size_t int_rank(const IntMatrix& a);

}  // namespace superperiods
