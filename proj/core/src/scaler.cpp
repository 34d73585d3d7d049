// SPDX-License-Identifier: Apache-2.0
#include "wxnet/scaler.hpp"

#include "wxnet/error.hpp"

#include <algorithm>
#include <limits>

namespace wxnet {

MinMaxScaler::MinMaxScaler(std::vector<double> mins, std::vector<double> maxs)
  : mins_(std::move(mins)), maxs_(std::move(maxs)) {
  if (mins_.size() != maxs_.size())
    throw ConfigError("scaler: min and max lists differ in length");
  for (std::size_t c = 0; c < mins_.size(); ++c)
    if (!(maxs_[c] >= mins_[c]))
      throw ConfigError("scaler: channel " + std::to_string(c) +
                        " has max < min");
}

MinMaxScaler MinMaxScaler::fit(const WindowedSet &train) {
  const std::size_t channels = train.targets.cols();
  if (train.size() == 0 || channels == 0)
    throw SizeError("scaler: cannot fit on an empty set");
  if (train.features.cols() % channels != 0)
    throw ShapeError("scaler: feature width " +
                     std::to_string(train.features.cols()) +
                     " is not a multiple of " + std::to_string(channels));
  std::vector<double> lo(channels, std::numeric_limits<double>::infinity());
  std::vector<double> hi(channels, -std::numeric_limits<double>::infinity());
  auto scan = [&](const Matrix &m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        const double v = m(i, j);
        lo[j % channels] = std::min(lo[j % channels], v);
        hi[j % channels] = std::max(hi[j % channels], v);
      }
  };
  scan(train.features);
  scan(train.targets);
  return MinMaxScaler(std::move(lo), std::move(hi));
}

void MinMaxScaler::check_width(const Matrix &m) const {
  if (!fitted())
    throw ConfigError("scaler used before fitting");
  if (m.cols() % channels() != 0)
    throw ShapeError("scaler: width " + std::to_string(m.cols()) +
                     " is not a multiple of " + std::to_string(channels()) +
                     " channels");
}

Matrix MinMaxScaler::transform(const Matrix &m) const {
  check_width(m);
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const std::size_t c = j % channels();
      const double range = maxs_[c] - mins_[c];
      out(i, j) = range > 0.0 ? (m(i, j) - mins_[c]) / range : 0.0;
    }
  return out;
}

WindowedSet MinMaxScaler::transform(const WindowedSet &set) const {
  WindowedSet out = set;
  out.features = transform(set.features);
  out.targets = transform(set.targets);
  return out;
}

Matrix MinMaxScaler::inverse_transform(const Matrix &m) const {
  check_width(m);
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const std::size_t c = j % channels();
      out(i, j) = m(i, j) * (maxs_[c] - mins_[c]) + mins_[c];
    }
  return out;
}

} // namespace wxnet
