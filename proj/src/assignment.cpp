#include "migrana/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "migrana/csv.hpp"
#include "migrana/errors.hpp"

namespace migrana {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shortest-augmenting-path Hungarian with dual potentials. On return the
// duals are feasible (cost[i][j] - u[i] - v[j] >= 0 everywhere, equality on
// the assignment), so zero reduced cost marks every arc an optimal
// permutation may use.
void solve_lap(const std::vector<std::vector<double>>& cost, std::vector<int>& rowsol,
               std::vector<double>& u, std::vector<double>& v) {
    int n = static_cast<int>(cost.size());
    u.assign(n + 1, 0.0);
    v.assign(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            int i0 = p[j0], j1 = 0;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    rowsol.assign(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j]) rowsol[p[j] - 1] = j - 1;
}

// Kuhn augmenting search inside the zero-reduced-cost graph.
bool try_match(int row, const std::vector<std::vector<int>>& zero_cols,
               const std::vector<char>& col_blocked, std::vector<int>& col_owner,
               std::vector<char>& col_seen) {
    for (int c : zero_cols[row]) {
        if (col_blocked[c] || col_seen[c]) continue;
        col_seen[c] = 1;
        if (col_owner[c] < 0 ||
            try_match(col_owner[c], zero_cols, col_blocked, col_owner, col_seen)) {
            col_owner[c] = row;
            return true;
        }
    }
    return false;
}

// Lexicographically smallest perfect matching (by column index per row, row
// order) among matchings restricted to zero-reduced-cost arcs. Any such
// matching is an optimal assignment and vice versa.
std::vector<int> lexicographic_matching(const std::vector<std::vector<double>>& cost,
                                        const std::vector<double>& u,
                                        const std::vector<double>& v) {
    int n = static_cast<int>(cost.size());
    double scale = 1.0;
    for (const auto& row : cost)
        for (double value : row) scale = std::max(scale, std::fabs(value));
    double tol = 1e-9 * scale;

    std::vector<std::vector<int>> zero_cols(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (cost[i][j] - u[i + 1] - v[j + 1] <= tol) zero_cols[i].push_back(j);

    std::vector<int> fixed(n, -1);
    std::vector<char> col_blocked(n, 0);
    for (int i = 0; i < n; ++i) {
        bool placed = false;
        for (int c : zero_cols[i]) {
            if (col_blocked[c]) continue;
            // feasibility: rows below i must still match into the free columns
            std::vector<char> blocked = col_blocked;
            blocked[c] = 1;
            std::vector<int> col_owner(n, -1);
            bool feasible = true;
            for (int r = i + 1; r < n && feasible; ++r) {
                std::vector<char> col_seen(n, 0);
                feasible = try_match(r, zero_cols, blocked, col_owner, col_seen);
            }
            if (feasible) {
                fixed[i] = c;
                col_blocked[c] = 1;
                placed = true;
                break;
            }
        }
        if (!placed) throw solve_error("assignment: zero graph lost its perfect matching");
    }
    return fixed;
}

}  // namespace

CostMatrix CostMatrix::make(size_t rows, size_t cols) {
    CostMatrix m;
    for (size_t i = 0; i < rows; ++i) m.row_labels.push_back("r" + std::to_string(i + 1));
    for (size_t j = 0; j < cols; ++j) m.col_labels.push_back("c" + std::to_string(j + 1));
    m.values.assign(rows * cols, 0.0);
    return m;
}

void CostMatrix::validate() const {
    if (rows() == 0 || cols() == 0) throw input_error("cost matrix is empty");
    if (values.size() != rows() * cols()) throw input_error("cost matrix shape mismatch");
    for (double v : values) {
        if (!std::isfinite(v)) throw input_error("cost matrix entries must be finite");
        if (v < 0) throw input_error("cost matrix entries must be nonnegative");
    }
}

CostMatrix load_cost_matrix(std::istream& in) {
    csv::Table raw = csv::read(in);
    if (raw.header.size() < 2) throw input_error("cost matrix: need at least one column label");
    if (raw.rows.empty()) throw input_error("cost matrix: no data rows");
    CostMatrix m;
    for (size_t j = 1; j < raw.header.size(); ++j) m.col_labels.push_back(raw.header[j]);
    for (const auto& cells : raw.rows) {
        if (cells.size() != raw.header.size())
            throw input_error("cost matrix: ragged row '" + (cells.empty() ? "" : cells[0]) + "'");
        m.row_labels.push_back(cells[0]);
        for (size_t j = 1; j < cells.size(); ++j) m.values.push_back(csv::parse_number(cells[j]));
    }
    m.validate();
    return m;
}

CostMatrix load_cost_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);
    return load_cost_matrix(in);
}

CostMatrix reduce_matrix(const CostMatrix& matrix) {
    matrix.validate();
    CostMatrix reduced = matrix;
    for (size_t i = 0; i < reduced.rows(); ++i) {
        double row_min = kInf;
        for (size_t j = 0; j < reduced.cols(); ++j) row_min = std::min(row_min, reduced.at(i, j));
        for (size_t j = 0; j < reduced.cols(); ++j) reduced.at(i, j) -= row_min;
    }
    for (size_t j = 0; j < reduced.cols(); ++j) {
        double col_min = kInf;
        for (size_t i = 0; i < reduced.rows(); ++i) col_min = std::min(col_min, reduced.at(i, j));
        for (size_t i = 0; i < reduced.rows(); ++i) reduced.at(i, j) -= col_min;
    }
    return reduced;
}

Assignment solve_assignment(const CostMatrix& matrix, Objective objective) {
    matrix.validate();
    size_t rows = matrix.rows(), cols = matrix.cols();
    size_t n = std::max(rows, cols);

    double max_entry = 0;
    for (double v : matrix.values) max_entry = std::max(max_entry, v);

    // working square matrix: transformed for Maximize, zero-padded dummies
    std::vector<std::vector<double>> work(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j)
            work[i][j] = objective == Objective::Maximize ? max_entry - matrix.at(i, j)
                                                          : matrix.at(i, j);

    std::vector<int> rowsol;
    std::vector<double> u, v;
    solve_lap(work, rowsol, u, v);
    std::vector<int> pairs = lexicographic_matching(work, u, v);

    Assignment result;
    result.objective = objective;
    result.pairs.assign(rows, -1);
    for (size_t i = 0; i < rows; ++i) {
        int c = pairs[i];
        if (c >= 0 && static_cast<size_t>(c) < cols) {
            result.pairs[i] = c;
            result.total += matrix.at(i, c);
        }
    }
    return result;
}

}  // namespace migrana
