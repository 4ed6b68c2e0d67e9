#pragma once

#include <cstdio>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "rmtnet/error.hpp"

namespace rmtnet::csv {

// Shortest form that round-trips through strtod (17 significant digits).
inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::vector<std::string> split(const std::string& line, char sep = ',') {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

// Reads a CSV with the given header, returning the data rows split into fields.
inline std::vector<std::vector<std::string>> read(std::istream& in, const std::string& header) {
    std::string line;
    if (!std::getline(in, line)) throw io_error("missing CSV header '" + header + "'");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != header) throw io_error("unexpected CSV header '" + line + "', wanted '" + header + "'");
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        rows.push_back(split(line));
    }
    return rows;
}

inline double to_double(const std::string& s) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw io_error("trailing characters in number '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw io_error("not a number: '" + s + "'");
    }
}

}  // namespace rmtnet::csv
