// SPDX-License-Identifier: Apache-2.0
#include "wxnet/metrics.hpp"

#include "wxnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace wxnet {

namespace {

void check_pair(const Matrix &y, const Matrix &y_hat, const char *name) {
  if (y.rows() != y_hat.rows() || y.cols() != y_hat.cols())
    throw ShapeError(std::string(name) + ": shape mismatch " +
                     y.shape_string() + " vs " + y_hat.shape_string());
  if (y.empty())
    throw SizeError(std::string(name) + ": empty input");
}

void check_vectors(std::span<const double> y, std::span<const double> y_hat,
                   const char *name) {
  if (y.size() != y_hat.size())
    throw ShapeError(std::string(name) + ": lengths " +
                     std::to_string(y.size()) + " and " +
                     std::to_string(y_hat.size()) + " differ");
  if (y.size() < 2)
    throw SizeError(std::string(name) + ": need at least 2 samples");
}

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v)
    s += x;
  return s / static_cast<double>(v.size());
}

bool is_constant(std::span<const double> v) {
  return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) ==
         v.end();
}

} // namespace


double mse(const Matrix &y, const Matrix &y_hat) {
  check_pair(y, y_hat, "mse");
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double e = y.data()[i] - y_hat.data()[i];
    s += e * e;
  }
  return s / static_cast<double>(y.size());
}

double mae(const Matrix &y, const Matrix &y_hat) {
  check_pair(y, y_hat, "mae");
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i)
    s += std::abs(y.data()[i] - y_hat.data()[i]);
  return s / static_cast<double>(y.size());
}

double rmse(const Matrix &y, const Matrix &y_hat) {
  return std::sqrt(mse(y, y_hat));
}

std::optional<double> pearson(std::span<const double> y,
                              std::span<const double> y_hat) {
  check_vectors(y, y_hat, "pearson");
  if (is_constant(y) || is_constant(y_hat))
    return std::nullopt;
  const double my = mean_of(y), mp = mean_of(y_hat);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double a = y[i] - my, b = y_hat[i] - mp;
    sxy += a * b;
    sxx += a * a;
    syy += b * b;
  }
  if (sxx == 0.0 || syy == 0.0)
    return std::nullopt;
  const double rho = sxy / std::sqrt(sxx * syy);
  return std::clamp(rho, -1.0, 1.0);
}

std::optional<double> r_squared(std::span<const double> y,
                                std::span<const double> y_hat) {
  check_vectors(y, y_hat, "r_squared");
  if (is_constant(y))
    return std::nullopt;
  const double my = mean_of(y);
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    ss_res += (y[i] - y_hat[i]) * (y[i] - y_hat[i]);
    ss_tot += (y[i] - my) * (y[i] - my);
  }
  if (ss_tot == 0.0)
    return std::nullopt;
  return 1.0 - ss_res / ss_tot;
}

std::vector<double> column(const Matrix &m, std::size_t j) {
  if (j >= m.cols())
    throw ShapeError("column " + std::to_string(j) + " out of range for " +
                     m.shape_string());
  std::vector<double> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    out[i] = m(i, j);
  return out;
}

double mean_r_squared(const Matrix &y, const Matrix &y_hat) {
  check_pair(y, y_hat, "mean_r_squared");
  if (y.rows() < 2)
    return std::numeric_limits<double>::quiet_NaN();
  double total = 0.0;
  std::size_t defined = 0;
  for (std::size_t j = 0; j < y.cols(); ++j) {
    if (auto r2 = r_squared(column(y, j), column(y_hat, j))) {
      total += *r2;
      ++defined;
    }
  }
  return defined ? total / static_cast<double>(defined)
                 : std::numeric_limits<double>::quiet_NaN();
}

} // namespace wxnet
