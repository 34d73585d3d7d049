// SPDX-License-Identifier: Apache-2.0
/**
 * @file   metrics.hpp
 * @brief  Regression metrics.
 *
 * mse/mae/rmse average over every entry (n x d), unlike the training loss
 * which sums over outputs and averages over samples. pearson and r_squared
 * return std::nullopt when the statistic is undefined (a constant argument).
 */
#pragma once

#include "wxnet/matrix.hpp"

#include <optional>
#include <span>

namespace wxnet {

double mse(const Matrix &y, const Matrix &y_hat);
double mae(const Matrix &y, const Matrix &y_hat);
double rmse(const Matrix &y, const Matrix &y_hat);

/// Sample correlation with n denominators. Requires n >= 2.
std::optional<double> pearson(std::span<const double> y,
                              std::span<const double> y_hat);
/// 1 - SS_res / SS_tot. Requires n >= 2; undefined for constant y.
std::optional<double> r_squared(std::span<const double> y,
                                std::span<const double> y_hat);

/// Column j of a matrix as a vector.
std::vector<double> column(const Matrix &m, std::size_t j);

/// Mean of the defined per-column R^2 values; NaN when none is defined.
double mean_r_squared(const Matrix &y, const Matrix &y_hat);

} // namespace wxnet
