#include "migrana/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "migrana/errors.hpp"

namespace migrana::csv {

static std::vector<std::string> split_line(const std::string& line, char delim) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == delim) {
            fields.push_back(field);
            field.clear();
        } else {
            field += c;
        }
    }
    if (quoted) throw input_error("unterminated quote in line: " + line);
    fields.push_back(field);
    return fields;
}

static std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

Table read(std::istream& in) {
    Table table;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        if (!have_header) {
            table.delimiter = line.find('\t') != std::string::npos ? '\t' : ',';
            for (auto& f : split_line(line, table.delimiter)) table.header.push_back(trim(f));
            have_header = true;
        } else {
            auto fields = split_line(line, table.delimiter);
            for (auto& f : fields) f = trim(f);
            table.rows.push_back(std::move(fields));
        }
    }
    if (!have_header) throw input_error("no header row");
    return table;
}

Table read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);
    return read(in);
}

double parse_number(const std::string& cell) {
    std::string cleaned;
    cleaned.reserve(cell.size());
    std::string trimmed = trim(cell);
    if (!trimmed.empty() && trimmed.back() == '%') trimmed.pop_back();
    for (char c : trimmed) {
        if (c == ',') continue;  // thousands separator
        cleaned += c;
    }
    if (cleaned.empty()) throw input_error("empty numeric cell");
    double value = 0;
    auto [ptr, ec] = std::from_chars(cleaned.data(), cleaned.data() + cleaned.size(), value);
    if (ec != std::errc() || ptr != cleaned.data() + cleaned.size())
        throw input_error("malformed number: '" + cell + "'");
    return value;
}

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

std::string escape(const std::string& field) {
    if (field.find_first_of(",\"\n\t") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << escape(fields[i]);
    }
    out << '\n';
}

}  // namespace migrana::csv
