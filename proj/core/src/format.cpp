#include "lacunary/format.hpp"
#include "lacunary/error.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace lacunary {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::Identifier: return "identifier";
    case ErrorKind::Parameter: return "parameter";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::Range: return "range";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Truncation: return "truncation";
    case ErrorKind::Construction: return "construction";
    case ErrorKind::Io: return "io";
    }
    return "unknown";
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

bool parse_double(const std::string& text, double& out) {
    if (text == "inf") { out = INFINITY; return true; }
    if (text == "-inf") { out = -INFINITY; return true; }
    const char* first = text.data();
    const char* last = first + text.size();
    if (first != last && *first == '+') ++first;
    auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last && first != last;
}

bool parse_int(const std::string& text, long long& out) {
    const char* first = text.data();
    const char* last = first + text.size();
    if (first != last && *first == '+') ++first;
    auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last && first != last;
}

}  // namespace lacunary
