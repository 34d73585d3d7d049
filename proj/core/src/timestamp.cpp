// SPDX-License-Identifier: Apache-2.0
#include "wxnet/timestamp.hpp"

#include "wxnet/error.hpp"

#include <charconv>
#include <cstdio>

namespace wxnet {

namespace {

bool read_int(std::string_view &text, char terminator, int &out) {
  const auto end = terminator ? text.find(terminator) : text.size();
  if (end == std::string_view::npos || end == 0 || end > 4)
    return false;
  auto field = text.substr(0, end);
  auto res = std::from_chars(field.data(), field.data() + field.size(), out);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size())
    return false;
  text.remove_prefix(terminator ? end + 1 : end);
  return true;
}

} // namespace

std::chrono::sys_time<std::chrono::minutes> Timestamp::to_sys() const {
  using namespace std::chrono;
  const sys_days date = year_month_day{std::chrono::year{year},
                                      std::chrono::month{unsigned(month)},
                                      std::chrono::day{unsigned(day)}};
  return date + hours{hour} + minutes{minute};
}

Timestamp Timestamp::from_sys(std::chrono::sys_time<std::chrono::minutes> t) {
  using namespace std::chrono;
  const auto date = floor<days>(t);
  const year_month_day ymd{date};
  const auto rest = t - date;
  return {int(ymd.year()), int(unsigned(ymd.month())), int(unsigned(ymd.day())),
          int(duration_cast<hours>(rest).count()), int(rest.count() % 60)};
}

std::optional<Timestamp> Timestamp::parse(std::string_view text) {
  int yy, mm, dd, hh, mi;
  auto rest = text;
  if (!read_int(rest, '/', yy) || !read_int(rest, '/', mm) ||
      !read_int(rest, ' ', dd) || !read_int(rest, ':', hh) ||
      rest.size() != 2 || !read_int(rest, 0, mi))
    return std::nullopt;
  if (yy < 0 || yy > 99 || hh < 0 || hh > 23 || mi < 0 || mi > 59)
    return std::nullopt;
  const std::chrono::year_month_day ymd{
    std::chrono::year{2000 + yy}, std::chrono::month{unsigned(mm)},
    std::chrono::day{unsigned(dd)}};
  if (!ymd.ok())
    return std::nullopt;
  return Timestamp{2000 + yy, mm, dd, hh, mi};
}

std::string Timestamp::format() const {
  if (year < 2000 || year > 2099)
    throw ConfigError("year " + std::to_string(year) +
                      " cannot be written as a two-digit station year");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%02d/%02d/%02d %d:%02d", year - 2000, month,
                day, hour, minute);
  return buf;
}

std::string Timestamp::iso() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d", year, month, day,
                hour, minute);
  return buf;
}

} // namespace wxnet
