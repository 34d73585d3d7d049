// SPDX-License-Identifier: Apache-2.0
#include "wxnet/window.hpp"

#include "wxnet/error.hpp"

#include <algorithm>

namespace wxnet {

namespace {

void append_block(WindowedSet &out, std::vector<double> &feat,
                  std::vector<double> &targ, const Series &series,
                  std::size_t begin, std::size_t end, std::size_t width) {
  for (std::size_t j = begin; j + width < end; ++j) {
    for (std::size_t k = 0; k < width; ++k) {
      const auto &v = series.records[j + k].values;
      feat.insert(feat.end(), v.begin(), v.end());
    }
    const auto &label = series.records[j + width];
    targ.insert(targ.end(), label.values.begin(), label.values.end());
    out.target_times.push_back(label.time);
  }
}

WindowedSet finish(WindowedSet out, std::vector<double> feat,
                   std::vector<double> targ, std::size_t width) {
  const std::size_t n = out.target_times.size();
  out.features = Matrix(n, width * kChannels, std::move(feat));
  out.targets = Matrix(n, kChannels, std::move(targ));
  out.width = width;
  return out;
}

} // namespace

WindowedSet window(const Series &series, std::size_t width) {
  if (width == 0)
    throw ConfigError("window width must be positive");
  if (series.size() < width + 1)
    throw SizeError("window: series of " + std::to_string(series.size()) +
                    " records is too short for width " +
                    std::to_string(width) + " (need at least " +
                    std::to_string(width + 1) + ")");
  WindowedSet out;
  std::vector<double> feat, targ;
  append_block(out, feat, targ, series, 0, series.size(), width);
  return finish(std::move(out), std::move(feat), std::move(targ), width);
}

WindowedSet window_blocks(const Series &series, std::size_t width,
                          std::chrono::minutes max_gap) {
  if (width == 0)
    throw ConfigError("window width must be positive");
  WindowedSet out;
  std::vector<double> feat, targ;
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= series.size(); ++i) {
    const bool boundary =
      i == series.size() ||
      series.records[i].time.to_sys() - series.records[i - 1].time.to_sys() >
        max_gap;
    if (boundary) {
      append_block(out, feat, targ, series, begin, i, width);
      begin = i;
    }
  }
  if (out.target_times.empty())
    throw SizeError("window_blocks: no contiguous block has more than " +
                    std::to_string(width) + " records");
  return finish(std::move(out), std::move(feat), std::move(targ), width);
}

WindowedSet subset(const WindowedSet &set, std::span<const std::size_t> rows) {
  WindowedSet out;
  out.features = gather_rows(set.features, rows);
  out.targets = gather_rows(set.targets, rows);
  out.channel_names = set.channel_names;
  out.width = set.width;
  if (!set.target_times.empty()) {
    out.target_times.reserve(rows.size());
    for (auto r : rows)
      out.target_times.push_back(set.target_times.at(r));
  }
  return out;
}

} // namespace wxnet
