#pragma once

#include <charconv>
#include <string>

namespace hexrec::csv {

/// Shortest round-trip decimal form of a double; stable across runs, so CSV
/// artifacts can be byte-compared.
inline std::string num(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace hexrec::csv
