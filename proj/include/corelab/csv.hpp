#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace corelab::csv {

// 17 significant digits: enough to round-trip a double exactly.
inline std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt(long long v) { return std::to_string(v); }
inline std::string fmt(int v) { return std::to_string(v); }
inline std::string fmt(bool v) { return v ? "1" : "0"; }

inline std::string quote_if_needed(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        out += ch;
        if (ch == '"') out += '"';
    }
    out += '"';
    return out;
}

// Rows of pre-formatted fields with a mandatory header row.
class Table {
public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    std::string str() const {
        std::ostringstream out;
        write_line(out, header_);
        for (const auto& row : rows_) write_line(out, row);
        return out.str();
    }

private:
    static void write_line(std::ostringstream& out, const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << quote_if_needed(row[i]);
        }
        out << '\n';
    }

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace corelab::csv
