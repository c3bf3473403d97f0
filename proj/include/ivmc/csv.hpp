#ifndef IVMC_CSV_HPP
#define IVMC_CSV_HPP

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <system_error>

#include "ivmc/errors.hpp"
#include "ivmc/interval.hpp"

namespace ivmc {

/// Shortest decimal representation that parses back to the identical
/// machine number.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw error("cannot parse number: '" + std::string(s) + "'");
    return v;
}

/// Serializes as `[lo,hi]` with full round-trip precision.
inline std::string to_string(const interval& a) {
    return "[" + format_double(a.lo()) + "," + format_double(a.hi()) + "]";
}

inline interval parse_interval(std::string_view s) {
    if (s.size() < 5 || s.front() != '[' || s.back() != ']')
        throw error("interval must look like [lo,hi]: '" + std::string(s) + "'");
    const auto comma = s.find(',');
    if (comma == std::string_view::npos)
        throw error("interval must look like [lo,hi]: '" + std::string(s) + "'");
    const double lo = parse_double(s.substr(1, comma - 1));
    const double hi = parse_double(s.substr(comma + 1, s.size() - comma - 2));
    return interval(lo, hi);
}

} // namespace ivmc

#endif
