// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

namespace wxnet {

/// Shortest decimal text that parses back to exactly `v`. "nan", "inf" and
/// "-inf" for non-finite values.
std::string format_double(double v);

/// Strict full-string parse (surrounding spaces allowed). Returns false on
/// any trailing garbage or an empty field.
bool parse_double(std::string_view text, double &out);

std::string_view trim(std::string_view text);

} // namespace wxnet
