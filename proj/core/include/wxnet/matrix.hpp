// SPDX-License-Identifier: Apache-2.0
/**
 * @file   matrix.hpp
 * @brief  Dense row-major matrix of doubles and the handful of operations
 *         the networks are built from. Every operation returns a new matrix.
 */
#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace wxnet {

class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  /// Row-wise literal, e.g. Matrix{{1, 2}, {3, 4}}. Rows must be equal length.
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }
  std::span<double> row(std::size_t r) {
    return std::span<double>(data_).subspan(r * cols_, cols_);
  }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(data_).subspan(r * cols_, cols_);
  }

  /// "RxC", used in error messages.
  std::string shape_string() const;

  bool operator==(const Matrix &) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix matmul(const Matrix &a, const Matrix &b);
/// Adds the single row of `bias` to every row of `a`.
Matrix add_row_broadcast(const Matrix &a, const Matrix &bias);
Matrix transpose(const Matrix &a);
Matrix hadamard(const Matrix &a, const Matrix &b);
Matrix map(const Matrix &a, const std::function<double(double)> &f);
double reduce_mean(const Matrix &a);

Matrix add(const Matrix &a, const Matrix &b);
Matrix subtract(const Matrix &a, const Matrix &b);
Matrix scale(const Matrix &a, double s);
/// 1 x cols matrix of column sums.
Matrix column_sums(const Matrix &a);
/// Rows of `a` picked by index, in the given order.
Matrix gather_rows(const Matrix &a, std::span<const std::size_t> indices);
/// Columns [first, first + count) of `a`.
Matrix slice_cols(const Matrix &a, std::size_t first, std::size_t count);

bool all_finite(const Matrix &a);

} // namespace wxnet
