#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace migrana::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;  // data rows, header excluded
    char delimiter = ',';
};

// Reads delimiter-separated text. The delimiter (comma or tab) is detected
// from the header line; '#' lines are comments; double-quoted fields may
// contain the delimiter and doubled quotes.
Table read(std::istream& in);
Table read_file(const std::string& path);

// Parses a numeric cell: optional ',' thousands separators and a trailing
// '%' are stripped, '.' is the decimal point. Throws on anything else.
double parse_number(const std::string& cell);

// Fixed 6-significant-digit format used for every CSV the tool writes;
// integers print without an exponent or trailing zeros.
std::string format_number(double value);

std::string escape(const std::string& field);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace migrana::csv
