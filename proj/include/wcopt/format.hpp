#pragma once

#include <string>
#include <string_view>

namespace wcopt {

/// Shortest decimal text that parses back to the same double; "inf", "-inf"
/// and "nan" for non-finite values.
std::string format_double(double value);

/// Inverse of format_double. Throws Errc::invalid_argument on malformed text.
double parse_double(std::string_view text);

}  // namespace wcopt
