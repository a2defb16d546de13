#pragma once

#include <string>
#include <vector>

#include "cubictrace/int.hpp"

namespace cubictrace::detail {

// Parses "a,b,c,..." with exactly `count` integers.
inline std::vector<Int> parse_int_list(const std::string& text, std::size_t count, const char* what)
{
    std::vector<Int> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        out.push_back(Int::parse(std::string_view(text).substr(start, comma - start)));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    if (out.size() != count)
        throw InvalidInput(std::string(what) + ": expected " + std::to_string(count)
                           + " comma-separated integers, got \"" + text + "\"");
    return out;
}

}  // namespace cubictrace::detail
