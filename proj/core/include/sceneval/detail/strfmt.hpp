#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace sceneval::detail {

// Shortest round-trip decimal form; deterministic across runs.
inline std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

} // namespace sceneval::detail
