#pragma once

#include <string>
#include <string_view>

namespace fpent {

/// Shortest decimal string that parses back to exactly the same double.
/// Non-finite values are written as "inf", "-inf" and "nan".
std::string format_double(double x);

/// Parses a full string as a double (accepting "inf"/"nan" forms). Throws
/// std::invalid_argument on trailing garbage or empty input.
double parse_double(std::string_view text);

}  // namespace fpent
