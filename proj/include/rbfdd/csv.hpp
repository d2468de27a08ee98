#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rbfdd::csv {

/// Scientific notation with 17 significant digits; parses back bit-exactly.
std::string format_double(double value);
double parse_double(std::string_view text);

std::vector<std::string> split(std::string_view line, char sep = ',');

/// Reads non-empty lines that are not '#' comments.
std::vector<std::string> data_lines(std::istream& in);

/// Numeric table reader: skips '#' lines and one optional non-numeric header row.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};
Table read_table(std::istream& in);

} // namespace rbfdd::csv
