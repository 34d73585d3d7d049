// SPDX-License-Identifier: Apache-2.0
/**
 * @file   window.hpp
 * @brief  Sliding-window featureization: `width` consecutive observations
 *         flattened record-major into one feature row, the next observation
 *         as its label.
 */
#pragma once

#include "wxnet/matrix.hpp"
#include "wxnet/series.hpp"

#include <chrono>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wxnet {

struct WindowedSet {
  Matrix features; // n x (width * channels)
  Matrix targets;  // n x channels
  std::vector<Timestamp> target_times;
  std::vector<std::string> channel_names = wxnet::channel_names();
  std::size_t width = 3;

  std::size_t size() const noexcept { return features.rows(); }
  std::size_t channels() const noexcept { return targets.cols(); }
};

/// One contiguous block: n = series.size() - width pairs. Row j of the
/// features is records j..j+width-1, row j of the targets is record j+width.
/// Throws SizeError when the series has fewer than width + 1 records.
WindowedSet window(const Series &series, std::size_t width = 3);

/// Splits the series wherever consecutive timestamps are more than `max_gap`
/// apart and windows each block separately; blocks too short to yield a pair
/// contribute nothing. Throws SizeError if no block yields a pair.
WindowedSet window_blocks(const Series &series, std::size_t width,
                          std::chrono::minutes max_gap);

/// Rows of a windowed set, in the given order.
WindowedSet subset(const WindowedSet &set, std::span<const std::size_t> rows);

} // namespace wxnet
