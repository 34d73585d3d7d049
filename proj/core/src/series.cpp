// SPDX-License-Identifier: Apache-2.0
#include "wxnet/series.hpp"

#include "wxnet/error.hpp"
#include "wxnet/text_format.hpp"

#include <algorithm>
#include <cmath>

namespace wxnet {

std::vector<std::string> channel_names() {
  return {kChannelNames.begin(), kChannelNames.end()};
}

std::vector<std::string> range_violations(const WeatherRecord &r) {
  std::vector<std::string> out;
  auto bad = [&](Channel c, const char *rule) {
    out.push_back(std::string(kCsvColumns[c]) + " " +
                  format_double(r.values[c]) + " " + rule);
  };
  for (std::size_t c = 0; c < kChannels; ++c)
    if (!std::isfinite(r.values[c]))
      bad(Channel(c), "is not finite");
  if (!(r.humidity() >= 0.0 && r.humidity() <= 100.0))
    bad(kHumidity, "outside [0, 100]");
  if (!(r.wind_direction() >= 0.0 && r.wind_direction() < 360.0))
    bad(kWindDirection, "outside [0, 360)");
  if (!(r.wind_speed() >= 0.0))
    bad(kWindSpeed, "is negative");
  if (!(r.radiation() >= 0.0))
    bad(kRadiation, "is negative");
  if (!(r.rainfall() >= 0.0))
    bad(kRainfall, "is negative");
  return out;
}

SplitResult split_train_test(const Series &full, const SplitRule &rule) {
  auto contains = [](const std::vector<int> &years, int y) {
    return std::find(years.begin(), years.end(), y) != years.end();
  };
  for (int y : rule.train_years)
    if (contains(rule.test_years, y))
      throw ConfigError("year " + std::to_string(y) +
                        " is assigned to both train and test");
  SplitResult out;
  for (const auto &rec : full.records) {
    const int y = rec.time.year;
    if (contains(rule.train_years, y))
      out.train.records.push_back(rec);
    else if (contains(rule.test_years, y))
      out.test.records.push_back(rec);
    else if (rule.fallback == SplitRule::Fallback::Train)
      out.train.records.push_back(rec);
    else if (rule.fallback == SplitRule::Fallback::Test)
      out.test.records.push_back(rec);
    else
      throw RoutingError("record at " + rec.time.iso() + " has year " +
                         std::to_string(y) +
                         " which is in neither the train nor the test set");
  }
  if (out.train.empty())
    out.warnings.push_back("training set is empty");
  if (out.test.empty())
    out.warnings.push_back("test set is empty");
  return out;
}

SplitResult split_at(const Series &full, const Timestamp &cutoff) {
  SplitResult out;
  for (const auto &rec : full.records)
    (rec.time < cutoff ? out.train : out.test).records.push_back(rec);
  if (out.train.empty())
    out.warnings.push_back("training set is empty");
  if (out.test.empty())
    out.warnings.push_back("test set is empty");
  return out;
}

} // namespace wxnet
