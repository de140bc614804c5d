#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace migrana {

// Labeled nonnegative cost matrix; rows are origins, columns destinations.
// Rectangular shapes are allowed and padded to square inside the solver.
struct CostMatrix {
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    std::vector<double> values;  // row-major

    size_t rows() const { return row_labels.size(); }
    size_t cols() const { return col_labels.size(); }
    double at(size_t i, size_t j) const { return values[i * cols() + j]; }
    double& at(size_t i, size_t j) { return values[i * cols() + j]; }

    static CostMatrix make(size_t rows, size_t cols);
    void validate() const;  // finite, nonnegative
};

// CSV with a header of destination labels (first cell ignored) and one
// origin label leading each row.
CostMatrix load_cost_matrix(std::istream& in);
CostMatrix load_cost_matrix_file(const std::string& path);

// Subtracts each row's minimum, then each column's minimum; every row and
// column of the result contains a zero.
CostMatrix reduce_matrix(const CostMatrix& matrix);

enum class Objective { Minimize, Maximize };

struct Assignment {
    Objective objective = Objective::Minimize;
    std::vector<int> pairs;  // row -> column; -1 when a padded dummy won
    double total = 0;        // over assigned (real) pairs
};

// O(n^3) Hungarian solve. Maximize runs on max_entry - entry. Among optimal
// permutations the lexicographically smallest (by column sequence) wins.
Assignment solve_assignment(const CostMatrix& matrix, Objective objective);

}  // namespace migrana
