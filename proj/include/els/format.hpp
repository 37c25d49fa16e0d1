#pragma once

#include <charconv>
#include <string>

namespace els {

/// Shortest decimal string that parses back to exactly the same double.
inline std::string shortest(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

}  // namespace els
