#pragma once

#include <charconv>
#include <string>

namespace casmc {

// Shortest decimal form that parses back to the same double.
inline std::string num_to_string(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
}

}  // namespace casmc
