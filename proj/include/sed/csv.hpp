#pragma once

// CSV output with 17 significant digits: decimal round-trips are exact for
// IEEE doubles, which keeps golden files byte-stable across runs.

#include <cstdio>
#include <initializer_list>
#include <ostream>
#include <string>

namespace sed::csv {

inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void row(std::ostream& out, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) out << ',';
        out << num(v);
        first = false;
    }
    out << '\n';
}

}  // namespace sed::csv
