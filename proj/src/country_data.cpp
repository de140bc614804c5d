#include "migrana/country_data.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "migrana/csv.hpp"
#include "migrana/errors.hpp"
#include "migrana/log.hpp"

namespace migrana {

static const std::array<std::string, kFactorCount> kFactorNames = {"x1", "x2", "x3",
                                                                   "x4", "x5", "x6"};

double CountryRecord::factor(int index) const {
    if (index < 1 || index > kFactorCount)
        throw input_error("factor index out of range: " + std::to_string(index));
    return x[index - 1];
}

double StandardizedRow::factor(int index) const {
    if (index < 1 || index > kFactorCount)
        throw input_error("factor index out of range: " + std::to_string(index));
    return factors[index - 1];
}

const CountryRecord* CountryTable::find(std::string_view name) const {
    for (const auto& r : records)
        if (r.name == name) return &r;
    return nullptr;
}

const StandardizedRow* StandardizedTable::find(std::string_view name) const {
    for (const auto& r : rows)
        if (r.name == name) return &r;
    return nullptr;
}

std::string ValidationReport::summary(size_t max_items) const {
    std::ostringstream out;
    out << errors.size() << " error(s), " << warnings.size() << " warning(s)";
    for (size_t i = 0; i < errors.size() && i < max_items; ++i) {
        const auto& e = errors[i];
        out << "; row " << e.row << " " << e.column << ": " << e.reason;
    }
    return out.str();
}

CountryTable load_country_table(std::istream& source, const IngestOptions& options,
                                ValidationReport* load_warnings) {
    csv::Table raw = csv::read(source);
    if (raw.header.size() != kFactorCount + 1)
        throw input_error("expected 7 columns (name,x1..x6), got " +
                          std::to_string(raw.header.size()));
    if (raw.header[0] != "name")
        throw input_error("first column must be 'name', got '" + raw.header[0] + "'");
    for (int j = 0; j < kFactorCount; ++j)
        if (raw.header[j + 1] != kFactorNames[j])
            throw input_error("column " + std::to_string(j + 2) + " must be '" + kFactorNames[j] +
                              "', got '" + raw.header[j + 1] + "'");
    if (raw.rows.empty()) throw input_error("no data rows");

    CountryTable table;
    std::set<std::string> seen;
    struct Missing {
        int row;
        int column;  // 0-based factor
    };
    std::vector<Missing> missing;

    for (size_t i = 0; i < raw.rows.size(); ++i) {
        const auto& cells = raw.rows[i];
        int row = static_cast<int>(i) + 1;
        if (cells.size() != kFactorCount + 1)
            throw input_error("row " + std::to_string(row) + ": expected 7 cells, got " +
                              std::to_string(cells.size()));
        CountryRecord rec;
        rec.name = cells[0];
        if (!seen.insert(rec.name).second)
            throw input_error("row " + std::to_string(row) + ": duplicate country name '" +
                              rec.name + "'");
        for (int j = 0; j < kFactorCount; ++j) {
            const std::string& cell = cells[j + 1];
            if (cell.empty()) {
                if (!options.impute_missing_with_column_mean)
                    throw input_error("row " + std::to_string(row) + " column " + kFactorNames[j] +
                                      ": missing cell");
                missing.push_back({row, j});
                rec.x[j] = std::nan("");
                continue;
            }
            try {
                rec.x[j] = csv::parse_number(cell);
            } catch (const Error& e) {
                throw input_error("row " + std::to_string(row) + " column " + kFactorNames[j] +
                                  ": " + e.what());
            }
        }
        table.records.push_back(std::move(rec));
    }

    if (!missing.empty()) {
        std::array<double, kFactorCount> sum{};
        std::array<int, kFactorCount> count{};
        for (const auto& r : table.records)
            for (int j = 0; j < kFactorCount; ++j)
                if (!std::isnan(r.x[j])) {
                    sum[j] += r.x[j];
                    ++count[j];
                }
        for (const auto& m : missing) {
            if (count[m.column] == 0)
                throw input_error("column " + kFactorNames[m.column] +
                                  ": every cell missing, cannot impute");
            double mean = sum[m.column] / count[m.column];
            table.records[m.row - 1].x[m.column] = mean;
            log::warn("imputed row ", m.row, " column ", kFactorNames[m.column],
                      " with column mean ", mean);
            if (load_warnings)
                load_warnings->warnings.push_back(
                    {m.row, kFactorNames[m.column], "missing cell imputed with column mean"});
        }
    }

    for (const auto& r : table.records)
        for (int j = 0; j < kFactorCount; ++j)
            table.column_maxima[j] = std::max(table.column_maxima[j], r.x[j]);
    return table;
}

CountryTable load_country_table_file(const std::string& path, const IngestOptions& options,
                                     ValidationReport* load_warnings) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);
    return load_country_table(in, options, load_warnings);
}

ValidationReport validate_table(const CountryTable& table) {
    ValidationReport report;
    std::set<std::string> seen;
    if (table.records.empty()) report.errors.push_back({0, "table", "empty table"});
    for (size_t i = 0; i < table.records.size(); ++i) {
        const auto& r = table.records[i];
        int row = static_cast<int>(i) + 1;
        if (r.name.empty()) report.errors.push_back({row, "name", "empty"});
        if (!seen.insert(r.name).second)
            report.errors.push_back({row, "name", "duplicate '" + r.name + "'"});
        for (int j = 0; j < kFactorCount; ++j) {
            if (std::isnan(r.x[j]) || std::isinf(r.x[j])) {
                report.errors.push_back({row, kFactorNames[j], "not finite"});
                continue;
            }
            if (r.x[j] < 0) report.errors.push_back({row, kFactorNames[j], "negative"});
        }
        // person counts must be whole numbers
        for (int j : {1, 2, 4, 5}) {
            if (!std::isnan(r.x[j]) && r.x[j] >= 0 && r.x[j] != std::floor(r.x[j]))
                report.errors.push_back({row, kFactorNames[j], "not an integer"});
        }
    }
    return report;
}

StandardizedTable standardize(const CountryTable& table) {
    if (table.records.empty()) throw input_error("cannot standardize an empty table");
    for (int j = 0; j < kFactorCount; ++j)
        if (!(table.column_maxima[j] > 0))
            throw input_error("column " + kFactorNames[j] +
                              ": maximum is zero, cannot standardize");
    StandardizedTable out;
    out.column_maxima = table.column_maxima;
    out.rows.reserve(table.records.size());
    for (const auto& r : table.records) {
        StandardizedRow row;
        row.name = r.name;
        for (int j = 0; j < kFactorCount; ++j) row.factors[j] = r.x[j] / table.column_maxima[j];
        out.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace migrana
