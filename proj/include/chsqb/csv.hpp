// csv.hpp: deterministic CSV emission

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chsqb {

// 17 significant digits, '.' decimal separator, independent of the C locale.
// Non-finite values print as `nan`.
std::string format_number(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> trailing_comments;   // written as "# <text>"

    void write(std::ostream& os) const;
    std::string str() const;
};

// Reads back a table written by CsvTable::write (`nan` parses to NaN).
CsvTable parse_csv(const std::string& text);

}  // namespace chsqb
