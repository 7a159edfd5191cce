#include "chsqb/csv.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace chsqb {

std::string format_number(double v) {
    if (!std::isfinite(v)) return "nan";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    if (ec != std::errc()) throw std::runtime_error("format_number: conversion failed");
    return {buf, ptr};
}

void CsvTable::write(std::ostream& os) const {
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
        os << '\n';
    }
    for (const auto& c : trailing_comments) os << "# " << c << '\n';
}

std::string CsvTable::str() const {
    std::ostringstream os;
    write(os);
    return os.str();
}

CsvTable parse_csv(const std::string& text) {
    CsvTable t;
    std::istringstream is(text);
    std::string line;
    bool first = true;
    const auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::size_t start = 0;
        while (true) {
            const auto c = s.find(',', start);
            out.push_back(s.substr(start, c == std::string::npos ? std::string::npos : c - start));
            if (c == std::string::npos) return out;
            start = c + 1;
        }
    };
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.rfind("# ", 0) == 0) {
            t.trailing_comments.push_back(line.substr(2));
            continue;
        }
        if (first) {
            t.header = split(line);
            first = false;
            continue;
        }
        std::vector<double> row;
        for (const auto& cell : split(line)) {
            if (cell == "nan") {
                row.push_back(std::numeric_limits<double>::quiet_NaN());
                continue;
            }
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc() || ptr != cell.data() + cell.size()) {
                throw std::invalid_argument("parse_csv: bad cell '" + cell + "'");
            }
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace chsqb
