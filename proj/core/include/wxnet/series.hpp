// SPDX-License-Identifier: Apache-2.0
/**
 * @file   series.hpp
 * @brief  Station observations: one record per 10-minute slot, seven
 *         channels in a fixed order.
 */
#pragma once

#include "wxnet/timestamp.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace wxnet {

enum Channel : std::size_t {
  kTemperature = 0, // degC
  kHumidity,        // %
  kWindSpeed,       // m/s
  kWindDirection,   // degrees
  kRadiation,       // W/m^2
  kRainfall,        // mm per 10 min
  kPressure,        // hPa
};

inline constexpr std::size_t kChannels = 7;

/// snake_case names used in reports and plot file names.
inline constexpr std::array<std::string_view, kChannels> kChannelNames = {
  "temperature", "humidity", "wind_speed", "wind_direction",
  "radiation",   "rainfall", "pressure"};

/// Column names of the station CSV, after the leading "Time" column.
inline constexpr std::array<std::string_view, kChannels> kCsvColumns = {
  "Temperature", "Humidity", "WindSpeed", "WindDirection",
  "Radiation",   "Rainfall", "Pressure"};

std::vector<std::string> channel_names();

struct WeatherRecord {
  Timestamp time;
  std::array<double, kChannels> values{};

  double temperature() const { return values[kTemperature]; }
  double humidity() const { return values[kHumidity]; }
  double wind_speed() const { return values[kWindSpeed]; }
  double wind_direction() const { return values[kWindDirection]; }
  double radiation() const { return values[kRadiation]; }
  double rainfall() const { return values[kRainfall]; }
  double pressure() const { return values[kPressure]; }

  bool operator==(const WeatherRecord &) const = default;
};

/// Physical-range violations of a record, one message per channel; empty
/// when the record is valid.
std::vector<std::string> range_violations(const WeatherRecord &r);

/// Time-ordered records. Timestamps are strictly increasing.
struct Series {
  std::vector<WeatherRecord> records;

  std::size_t size() const noexcept { return records.size(); }
  bool empty() const noexcept { return records.empty(); }
  bool operator==(const Series &) const = default;
};

/// Year-based routing of records into train and test sets.
struct SplitRule {
  std::vector<int> train_years{2022};
  std::vector<int> test_years{2021};
  /// Where records of other years go. Unset means they are an error.
  enum class Fallback { None, Train, Test } fallback = Fallback::None;
};

struct SplitResult {
  Series train;
  Series test;
  std::vector<std::string> warnings;
};

/// Throws RoutingError for a year in neither bucket (unless a fallback is
/// set); warns when either side comes out empty.
SplitResult split_train_test(const Series &full, const SplitRule &rule = {});

/// Chronological cut: records before `cutoff` train, the rest test.
SplitResult split_at(const Series &full, const Timestamp &cutoff);

} // namespace wxnet
