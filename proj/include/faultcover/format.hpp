#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace faultcover {

/// Shortest decimal form of `v` that parses back to the same double.
inline std::string format_number(double v) {
    char buf[64];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

}  // namespace faultcover
