#pragma once

#include <sstream>
#include <string>
#include <vector>

namespace mlcd {

/// RFC 4180 quoting: wrap in quotes when the field contains a comma, quote,
/// or newline; embedded quotes are doubled.
inline std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += "\"";
    return out;
}

inline std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(fields[i]);
    }
    out += '\n';
    return out;
}

/// Shortest round-trip formatting for doubles in CSV output.
inline std::string csv_num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace mlcd
