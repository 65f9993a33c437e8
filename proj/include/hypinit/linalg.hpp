// Copyright 2026 The hypinit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hypinit {

/// Dense row-major real matrix.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> values);
  /// Row-major initializer; every row must have the same length.
  static Matrix from_rows(const std::vector<std::vector<double>> &rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double &operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> data() const { return data_; }

  double trace() const;
  double frobenius_norm() const;
  Matrix transpose() const;

  bool operator==(const Matrix &) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix &a, const Matrix &b);
Matrix operator-(const Matrix &a, const Matrix &b);

bool is_symmetric(const Matrix &m, double tolerance = 1e-9);

struct SymmetricEigen {
  std::vector<double> values; ///< descending
  Matrix vectors;             ///< column k pairs with values[k]
};

/// Cyclic Jacobi eigendecomposition of a real symmetric matrix.
/// Throws Error if `m` is not square or not symmetric within 1e-9.
SymmetricEigen symmetric_eigen(const Matrix &m);

/// Eigenvalues only, descending.
std::vector<double> hermitian_eigenvalues(const Matrix &m);

} // namespace hypinit
