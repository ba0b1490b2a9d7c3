#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

namespace orlicz::io {

/// Shortest decimal representation that round-trips to the same double.
/// Keeps CSV bodies byte-stable across platforms and runs.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) return std::to_string(v);
    return std::string(buf, ptr);
}

} // namespace orlicz::io
