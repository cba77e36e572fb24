#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace qcs::detail {

// Shortest round-trip decimal for a double (%.17g is always sufficient).
inline std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace qcs::detail
