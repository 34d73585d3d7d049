// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace wxnet {

/// Naive local calendar time at minute resolution.
struct Timestamp {
  int year = 2000;
  int month = 1;
  int day = 1;
  int hour = 0;
  int minute = 0;

  auto operator<=>(const Timestamp &) const = default;

  std::chrono::sys_time<std::chrono::minutes> to_sys() const;
  static Timestamp from_sys(std::chrono::sys_time<std::chrono::minutes> t);

  /// Station format "YY/MM/DD H:MM", e.g. "21/10/15 0:00". Two-digit years
  /// map to 2000-2099.
  static std::optional<Timestamp> parse(std::string_view text);
  /// Inverse of parse(); the year must lie in 2000-2099.
  std::string format() const;
  /// "2021-10-15T00:00" for plot files.
  std::string iso() const;

  Timestamp plus(std::chrono::minutes delta) const {
    return from_sys(to_sys() + delta);
  }
};

} // namespace wxnet
