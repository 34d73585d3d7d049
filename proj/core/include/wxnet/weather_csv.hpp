// SPDX-License-Identifier: Apache-2.0
/**
 * @file   weather_csv.hpp
 * @brief  Reader and writer for the station CSV format:
 *
 *   Time,Temperature,Humidity,WindSpeed,WindDirection,Radiation,Rainfall,Pressure
 *   21/10/15 0:00,17.70,94.0,0.000,0.0,0.00,0.0,1011.7
 */
#pragma once

#include "wxnet/series.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace wxnet {

inline constexpr std::string_view kCsvHeader =
  "Time,Temperature,Humidity,WindSpeed,WindDirection,Radiation,Rainfall,"
  "Pressure";

struct ParseOptions {
  /// Strict: range violations and missing values are errors.
  /// Lenient: range violations are kept with a warning; rows with missing
  /// values are dropped with a warning.
  bool strict = true;
};

struct ParseResult {
  Series series;
  std::vector<std::string> warnings;
};

/// Throws ParseError (with line number) on malformed rows or a bad header and
/// OrderingError when timestamps do not strictly increase.
ParseResult parse_csv(std::istream &in, const ParseOptions &opts = {});
ParseResult parse_csv_file(const std::filesystem::path &path,
                           const ParseOptions &opts = {});

/// Values use shortest round-trip formatting, so parse_csv(write_csv(s)) == s.
void write_csv(std::ostream &out, const Series &series);
void write_csv_file(const std::filesystem::path &path, const Series &series);

} // namespace wxnet
