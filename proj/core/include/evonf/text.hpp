#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <system_error>

namespace evonf {

/// Shortest decimal form that parses back to exactly the same double.
/// Every artifact and CSV writer goes through this so identical numbers
/// always print identically.
inline void append_double(std::string& out, double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

inline std::string format_double(double v) {
    std::string s;
    append_double(s, v);
    return s;
}

/// Strict full-field double parse; rejects partial consumption and empty
/// fields. Returns false instead of throwing so callers can attach position
/// information.
inline bool parse_double(std::string_view field, double& out) {
    const char* first = field.data();
    const char* last = first + field.size();
    auto res = std::from_chars(first, last, out);
    return res.ec == std::errc{} && res.ptr == last;
}

} // namespace evonf
