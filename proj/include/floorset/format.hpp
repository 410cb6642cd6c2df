#pragma once
// Shortest round-trip decimal rendering; the CSV/CLI output contract.

#include <charconv>
#include <cstdint>
#include <string>
#include <system_error>

namespace floorset {

inline std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

inline std::string format_uint(uint64_t v) {
    char buf[24];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

} // namespace floorset
