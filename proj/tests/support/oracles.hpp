// SPDX-License-Identifier: Apache-2.0
/**
 * @file   oracles.hpp
 * @brief  Test-only reference implementations. Nothing here calls the
 *         library's matmul, backprop or metric code paths; they are what the
 *         library is checked against.
 */
#pragma once

#include "wxnet/matrix.hpp"
#include "wxnet/nn.hpp"
#include "wxnet/random.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace wxnet::testing {

inline Matrix random_matrix(std::size_t r, std::size_t c, Rng &rng,
                            double scale = 1.0) {
  Matrix m(r, c);
  for (double &v : m.data())
    v = scale * rng.normal();
  return m;
}

/// Entry-by-entry triple loop in the textbook i-j-k order.
inline Matrix naive_matmul(const Matrix &a, const Matrix &b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k)
        s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

/// Loss as the plain double-loop sum, (1/n) sum_k sum_i (y - o)^2.
inline double loop_squared_loss(const Matrix &y, const Matrix &o) {
  double s = 0.0;
  for (std::size_t k = 0; k < y.rows(); ++k)
    for (std::size_t i = 0; i < y.cols(); ++i)
      s += (y(k, i) - o(k, i)) * (y(k, i) - o(k, i));
  return s / static_cast<double>(y.rows());
}

/// Relative error with a small floor so that two near-zero partials (for
/// example the input-independent PaperExact gates) compare as equal.
inline double relative_error(double analytic, double numeric,
                             double floor = 1e-6) {
  const double denom = std::max({std::abs(analytic), std::abs(numeric), floor});
  return std::abs(analytic - numeric) / denom;
}

struct GradCheckResult {
  double worst = 0.0;
  std::string worst_name;
  std::size_t checked = 0;
};

/// Central differences of `loss(params)` for every entry of every tensor,
/// compared with `analytic` (same layout).
inline GradCheckResult
finite_difference_check(const ModelParams &params, const ModelParams &analytic,
                        const std::function<double(const ModelParams &)> &loss,
                        double eps = 1e-5) {
  GradCheckResult out;
  ModelParams probe = params;
  auto slots = named_tensors(probe);
  auto grads = named_tensors(analytic);
  for (std::size_t t = 0; t < slots.size(); ++t) {
    Matrix &m = *slots[t].second;
    for (std::size_t i = 0; i < m.size(); ++i) {
      const double orig = m.data()[i];
      m.data()[i] = orig + eps;
      const double up = loss(probe);
      m.data()[i] = orig - eps;
      const double down = loss(probe);
      m.data()[i] = orig;
      const double numeric = (up - down) / (2.0 * eps);
      const double err = relative_error(grads[t].second->data()[i], numeric);
      ++out.checked;
      if (err > out.worst) {
        out.worst = err;
        out.worst_name = slots[t].first + "[" + std::to_string(i) + "]";
      }
    }
  }
  return out;
}

/// Parameters with every entry (biases included) drawn from N(0, scale^2),
/// so every partial derivative is exercised.
inline ModelParams random_params(const ArchSpec &arch, Rng &rng,
                                 double scale = 0.5) {
  ModelParams p = zero_params(arch);
  for (auto &[name, m] : named_tensors(p))
    for (double &v : m->data())
      v = scale * rng.normal();
  return p;
}

/// Brute-force metric references.
inline double loop_mse(const Matrix &y, const Matrix &p) {
  double s = 0.0;
  for (std::size_t i = 0; i < y.rows(); ++i)
    for (std::size_t j = 0; j < y.cols(); ++j)
      s += (y(i, j) - p(i, j)) * (y(i, j) - p(i, j));
  return s / static_cast<double>(y.rows() * y.cols());
}

inline double loop_mae(const Matrix &y, const Matrix &p) {
  double s = 0.0;
  for (std::size_t i = 0; i < y.rows(); ++i)
    for (std::size_t j = 0; j < y.cols(); ++j)
      s += std::abs(y(i, j) - p(i, j));
  return s / static_cast<double>(y.rows() * y.cols());
}

/// Two-pass textbook Pearson via explicit covariance and standard deviations.
inline double loop_pearson(const std::vector<double> &a,
                           const std::vector<double> &b) {
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i] / n;
    mb += b[i] / n;
  }
  double cov = 0, va = 0, vb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cov += (a[i] - ma) * (b[i] - mb) / n;
    va += (a[i] - ma) * (a[i] - ma) / n;
    vb += (b[i] - mb) * (b[i] - mb) / n;
  }
  return cov / (std::sqrt(va) * std::sqrt(vb));
}

inline double loop_r_squared(const std::vector<double> &y,
                             const std::vector<double> &p) {
  double mean = 0;
  for (double v : y)
    mean += v;
  mean /= static_cast<double>(y.size());
  double res = 0, tot = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    res += (y[i] - p[i]) * (y[i] - p[i]);
    tot += (y[i] - mean) * (y[i] - mean);
  }
  return 1.0 - res / tot;
}

} // namespace wxnet::testing
