#pragma once

#include "algint/rational.hpp"

#include <charconv>
#include <string>
#include <system_error>

namespace algint {

// Shortest round-trip decimal text for a double; keeps CSV/JSON output
// byte-stable across runs and job counts.
inline std::string format_double(double x) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

}  // namespace algint
