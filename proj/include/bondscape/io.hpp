#pragma once

#include <charconv>
#include <stdexcept>
#include <string>
#include <system_error>

namespace bondscape {

// Shortest decimal string that round-trips the double exactly. Keeps CSV
// output byte-stable across platforms and compilers.
inline std::string format_double(double v) {
    char buf[64];
    const std::to_chars_result res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc{}) throw std::runtime_error("double formatting failed");
    return std::string(buf, res.ptr);
}

}  // namespace bondscape
