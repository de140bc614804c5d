#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace migrana {

inline constexpr int kFactorCount = 6;

// One country's six indicator values. Factor indices follow the fixed
// schema: x1 strength index, x2 asylum seekers, x3 asylum applications,
// x4 available resources, x5 refugees in neighboring countries,
// x6 refugees in the country. x2/x3/x5/x6 are person counts and must be
// nonnegative integers; x1/x4 are nonnegative reals.
struct CountryRecord {
    std::string name;
    std::array<double, kFactorCount> x{};

    double factor(int index) const;  // index in 1..6
};

struct CountryTable {
    std::vector<CountryRecord> records;
    std::array<double, kFactorCount> column_maxima{};

    const CountryRecord* find(std::string_view name) const;
};

struct ValidationIssue {
    int row = 0;  // 1-based data row
    std::string column;
    std::string reason;
};

struct ValidationReport {
    std::vector<ValidationIssue> errors;
    std::vector<ValidationIssue> warnings;

    bool ok() const { return errors.empty(); }
    std::string summary(size_t max_items = 3) const;
};

struct IngestOptions {
    // Missing cells are a hard error by default; opting in replaces them
    // with the column mean and records a warning instead.
    bool impute_missing_with_column_mean = false;
};

// Reads the seven-column indicator table (header: name,x1,...,x6).
// Parse failures name the offending row and column.
CountryTable load_country_table(std::istream& source, const IngestOptions& options = {},
                                ValidationReport* load_warnings = nullptr);
CountryTable load_country_table_file(const std::string& path, const IngestOptions& options = {},
                                     ValidationReport* load_warnings = nullptr);

ValidationReport validate_table(const CountryTable& table);

struct StandardizedRow {
    std::string name;
    std::array<double, kFactorCount> factors{};

    double factor(int index) const;  // index in 1..6
};

struct StandardizedTable {
    std::vector<StandardizedRow> rows;
    std::array<double, kFactorCount> column_maxima{};

    const StandardizedRow* find(std::string_view name) const;
};

// Divides every cell by its column maximum, mapping each column onto [0,1]
// with at least one exact 1. A column whose maximum is zero is an error.
StandardizedTable standardize(const CountryTable& table);

}  // namespace migrana
