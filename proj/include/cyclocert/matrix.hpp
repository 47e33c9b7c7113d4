#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <vector>

#include "cyclocert/bigint.hpp"

namespace cyclocert {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(const std::vector<BigInt>& entries);
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static IntMatrix from_columns(std::size_t rows, const std::vector<std::vector<BigInt>>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<BigInt> column(std::size_t j) const;
  IntMatrix transpose() const;
  /// Columns of `this` followed by columns of `other`; row counts must agree.
  IntMatrix hconcat(const IntMatrix& other) const;
  /// Rows of `this` followed by rows of `other`; column counts must agree.
  IntMatrix vconcat(const IntMatrix& other) const;
  IntMatrix submatrix(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const;

  IntMatrix operator*(const IntMatrix& rhs) const;
  IntMatrix operator+(const IntMatrix& rhs) const;
  IntMatrix operator-(const IntMatrix& rhs) const;
  std::vector<BigInt> operator*(const std::vector<BigInt>& v) const;
  bool operator==(const IntMatrix& rhs) const = default;

  bool is_zero() const;
  /// Exact determinant by fraction-free (Bareiss) elimination; square only.
  BigInt determinant() const;

  const std::vector<BigInt>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

}  // namespace cyclocert
