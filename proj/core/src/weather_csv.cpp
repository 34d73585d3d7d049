// SPDX-License-Identifier: Apache-2.0
#include "wxnet/weather_csv.hpp"

#include "wxnet/error.hpp"
#include "wxnet/text_format.hpp"

#include <fstream>
#include <istream>
#include <ostream>

namespace wxnet {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

bool header_matches(std::string_view line) {
  if (line.starts_with("\xEF\xBB\xBF"))
    line.remove_prefix(3);
  auto fields = split_fields(trim(line));
  auto expected = split_fields(kCsvHeader);
  if (fields.size() != expected.size())
    return false;
  for (std::size_t i = 0; i < fields.size(); ++i)
    if (trim(fields[i]) != expected[i])
      return false;
  return true;
}

} // namespace

ParseResult parse_csv(std::istream &in, const ParseOptions &opts) {
  ParseResult result;
  std::string line;
  std::size_t lineno = 0;

  while (std::getline(in, line)) {
    ++lineno;
    if (!trim(line).empty())
      break;
  }
  if (trim(line).empty())
    throw ParseError("missing header row", lineno ? lineno : 1);
  if (!header_matches(line))
    throw ParseError("unexpected header, want '" + std::string(kCsvHeader) +
                       "'",
                     lineno);

  while (std::getline(in, line)) {
    ++lineno;
    const auto text = trim(line);
    if (text.empty())
      continue;
    const auto fields = split_fields(text);
    if (fields.size() != kChannels + 1)
      throw ParseError("expected " + std::to_string(kChannels + 1) +
                         " fields, found " + std::to_string(fields.size()),
                       lineno);

    WeatherRecord rec;
    const auto time = Timestamp::parse(trim(fields[0]));
    if (!time)
      throw ParseError("bad timestamp '" + std::string(fields[0]) +
                         "', want YY/MM/DD H:MM",
                       lineno);
    rec.time = *time;

    bool missing = false;
    for (std::size_t c = 0; c < kChannels; ++c) {
      const auto field = trim(fields[c + 1]);
      if (field.empty()) {
        if (opts.strict)
          throw ParseError("missing value for " + std::string(kCsvColumns[c]),
                           lineno);
        result.warnings.push_back("line " + std::to_string(lineno) +
                                  ": missing " + std::string(kCsvColumns[c]) +
                                  ", row dropped");
        missing = true;
        break;
      }
      if (!parse_double(field, rec.values[c]))
        throw ParseError("bad number '" + std::string(field) + "' for " +
                           std::string(kCsvColumns[c]),
                         lineno);
    }
    if (missing)
      continue;

    for (const auto &v : range_violations(rec)) {
      if (opts.strict)
        throw ParseError(v, lineno);
      result.warnings.push_back("line " + std::to_string(lineno) + ": " + v);
    }

    auto &records = result.series.records;
    if (!records.empty() && !(records.back().time < rec.time))
      throw OrderingError("timestamp " + std::string(trim(fields[0])) +
                            " does not follow " + records.back().time.format(),
                          lineno);
    records.push_back(rec);
  }
  return result;
}

ParseResult parse_csv_file(const std::filesystem::path &path,
                           const ParseOptions &opts) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open '" + path.string() + "' for reading");
  return parse_csv(in, opts);
}

void write_csv(std::ostream &out, const Series &series) {
  out << kCsvHeader << '\n';
  for (const auto &rec : series.records) {
    out << rec.time.format();
    for (double v : rec.values)
      out << ',' << format_double(v);
    out << '\n';
  }
}

void write_csv_file(const std::filesystem::path &path, const Series &series) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw IoError("cannot open '" + path.string() + "' for writing");
  write_csv(out, series);
  if (!out)
    throw IoError("failed writing '" + path.string() + "'");
}

} // namespace wxnet
