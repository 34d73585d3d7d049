// SPDX-License-Identifier: Apache-2.0
/**
 * @file   scaler.hpp
 * @brief  Per-channel min-max scaling, x' = (x - min) / (max - min).
 *
 * Fitted on training data only and then applied unchanged to any other set,
 * so test values may fall outside [0, 1]. A channel with max == min maps to 0.
 * Feature column j belongs to channel j % channels.
 */
#pragma once

#include "wxnet/matrix.hpp"
#include "wxnet/window.hpp"

#include <vector>

namespace wxnet {

class MinMaxScaler {
public:
  MinMaxScaler() = default;
  /// Throws ConfigError when sizes differ or some max < min.
  MinMaxScaler(std::vector<double> mins, std::vector<double> maxs);

  /// Extrema per channel over every feature lag and the targets.
  static MinMaxScaler fit(const WindowedSet &train);

  bool fitted() const noexcept { return !mins_.empty(); }
  std::size_t channels() const noexcept { return mins_.size(); }
  double min(std::size_t channel) const { return mins_.at(channel); }
  double max(std::size_t channel) const { return maxs_.at(channel); }
  const std::vector<double> &mins() const noexcept { return mins_; }
  const std::vector<double> &maxs() const noexcept { return maxs_; }

  /// Any matrix whose width is a multiple of channels().
  Matrix transform(const Matrix &m) const;
  WindowedSet transform(const WindowedSet &set) const;
  Matrix inverse_transform(const Matrix &m) const;

  bool operator==(const MinMaxScaler &) const = default;

private:
  void check_width(const Matrix &m) const;

  std::vector<double> mins_;
  std::vector<double> maxs_;
};

inline MinMaxScaler fit_scaler(const WindowedSet &train) {
  return MinMaxScaler::fit(train);
}

} // namespace wxnet
