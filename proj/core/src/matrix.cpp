// SPDX-License-Identifier: Apache-2.0
#include "wxnet/matrix.hpp"

#include "wxnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wxnet {

namespace {

void require_same_shape(const Matrix &a, const Matrix &b, const char *op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError(std::string(op) + ": shape mismatch " + a.shape_string() +
                     " vs " + b.shape_string());
}

template <typename F>
Matrix zip_with(const Matrix &a, const Matrix &b, const char *op, F f) {
  require_same_shape(a, b, op);
  Matrix out(a.rows(), a.cols());
  auto x = a.data();
  auto y = b.data();
  auto z = out.data();
  for (std::size_t i = 0; i < z.size(); ++i)
    z[i] = f(x[i], y[i]);
  return out;
}

} // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
  : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
  : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_)
    throw ShapeError("matrix data length " + std::to_string(data_.size()) +
                     " does not match shape " + shape_string());
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
  : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto &r : rows) {
    if (r.size() != cols_)
      throw ShapeError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1.0;
  return m;
}

std::string Matrix::shape_string() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

Matrix matmul(const Matrix &a, const Matrix &b) {
  if (a.cols() != b.rows())
    throw ShapeError("matmul: cannot multiply " + a.shape_string() + " by " +
                     b.shape_string());
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  Matrix c(n, m);
  // i-k-j order keeps the inner loop contiguous in both b and c.
  for (std::size_t i = 0; i < n; ++i) {
    auto ci = c.row(i);
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = a(i, p);
      auto bp = b.row(p);
      for (std::size_t j = 0; j < m; ++j)
        ci[j] += aip * bp[j];
    }
  }
  return c;
}

Matrix add_row_broadcast(const Matrix &a, const Matrix &bias) {
  if (bias.rows() != 1 || bias.cols() != a.cols())
    throw ShapeError("add_row_broadcast: bias " + bias.shape_string() +
                     " does not broadcast over " + a.shape_string());
  Matrix out = a;
  auto b = bias.row(0);
  for (std::size_t i = 0; i < out.rows(); ++i) {
    auto r = out.row(i);
    for (std::size_t j = 0; j < r.size(); ++j)
      r[j] += b[j];
  }
  return out;
}

Matrix transpose(const Matrix &a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      t(j, i) = a(i, j);
  return t;
}

Matrix hadamard(const Matrix &a, const Matrix &b) {
  return zip_with(a, b, "hadamard", [](double x, double y) { return x * y; });
}

Matrix map(const Matrix &a, const std::function<double(double)> &f) {
  Matrix out(a.rows(), a.cols());
  std::transform(a.data().begin(), a.data().end(), out.data().begin(), f);
  return out;
}

double reduce_mean(const Matrix &a) {
  if (a.empty())
    throw ShapeError("reduce_mean: empty matrix");
  return std::accumulate(a.data().begin(), a.data().end(), 0.0) /
         static_cast<double>(a.size());
}

Matrix add(const Matrix &a, const Matrix &b) {
  return zip_with(a, b, "add", [](double x, double y) { return x + y; });
}

Matrix subtract(const Matrix &a, const Matrix &b) {
  return zip_with(a, b, "subtract", [](double x, double y) { return x - y; });
}

Matrix scale(const Matrix &a, double s) {
  Matrix out = a;
  for (double &v : out.data())
    v *= s;
  return out;
}

Matrix column_sums(const Matrix &a) {
  Matrix out(1, a.cols());
  auto o = out.row(0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto r = a.row(i);
    for (std::size_t j = 0; j < r.size(); ++j)
      o[j] += r[j];
  }
  return out;
}

Matrix gather_rows(const Matrix &a, std::span<const std::size_t> indices) {
  Matrix out(indices.size(), a.cols());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= a.rows())
      throw ShapeError("gather_rows: index " + std::to_string(indices[i]) +
                       " out of range for " + a.shape_string());
    auto src = a.row(indices[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

Matrix slice_cols(const Matrix &a, std::size_t first, std::size_t count) {
  if (first + count > a.cols())
    throw ShapeError("slice_cols: columns [" + std::to_string(first) + ", " +
                     std::to_string(first + count) + ") out of range for " +
                     a.shape_string());
  Matrix out(a.rows(), count);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto src = a.row(i).subspan(first, count);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

bool all_finite(const Matrix &a) {
  return std::all_of(a.data().begin(), a.data().end(),
                     [](double v) { return std::isfinite(v); });
}

} // namespace wxnet
