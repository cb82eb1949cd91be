// format.hpp - shortest round-trip decimal formatting

#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace hseom {

inline std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc{}) return "nan";
    return std::string(buf, res.ptr);
}

inline bool parse_double(const std::string& s, double& out)
{
    const char* first = s.data();
    const char* last = s.data() + s.size();
    while (first < last && (*first == ' ' || *first == '\t')) ++first;
    while (last > first && (last[-1] == ' ' || last[-1] == '\t' || last[-1] == '\r')) --last;
    if (first < last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc{} && res.ptr == last;
}

} // namespace hseom
