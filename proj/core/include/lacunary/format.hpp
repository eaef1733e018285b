#pragma once

#include <string>

namespace lacunary {

/// Shortest decimal string that parses back to the same double.
/// Non-finite values render as "inf", "-inf" and "nan".
std::string format_double(double x);

/// Strict parse of a whole string; returns false on trailing garbage.
bool parse_double(const std::string& text, double& out);
bool parse_int(const std::string& text, long long& out);

}  // namespace lacunary
