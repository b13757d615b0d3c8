#pragma once

#include <cstddef>
#include <vector>

#include "hopfgroup/scalar.hpp"

namespace hopfgroup {

/// Dense row-major matrix over the cyclotomic scalars.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  CycScalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const CycScalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;
  Matrix conjugate_transpose() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<CycScalar> data_;
};

/// Rank by fraction-free (Bareiss) elimination; every division is exact.
std::size_t exact_rank(Matrix m);

}  // namespace hopfgroup
