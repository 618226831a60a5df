#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tailtau::csv {

/// Splits one line of RFC 4180-style CSV. Double quotes delimit fields that
/// contain commas; "" inside a quoted field is a literal quote.
std::vector<std::string> split_line(std::string_view line);

std::string_view trim(std::string_view s);

/// Strict double parse of the whole (trimmed) field.
std::optional<double> parse_double(std::string_view field);

/// Shortest representation that round-trips; "nan" for NaN.
std::string format_double(double v);

/// Quotes the field if it contains a comma, quote or newline.
std::string escape(std::string_view field);

}  // namespace tailtau::csv
