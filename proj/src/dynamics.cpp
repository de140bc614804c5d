#include "migrana/dynamics.hpp"

#include <cmath>

#include "migrana/errors.hpp"
#include "migrana/regression.hpp"

namespace migrana {

void EnvironmentalSeries::validate() const {
    size_t n = years.size();
    if (medical_change_rate.size() != n || resource_change_rate.size() != n ||
        control_ability.size() != n)
        throw input_error("environmental series: column lengths differ");
    if (n < 3) throw input_error("environmental series: need at least 3 observations");
    for (double r : medical_change_rate)
        if (r < 0 || r > 1) throw input_error("environmental series: medical rate outside [0,1]");
    for (double r : resource_change_rate)
        if (r < 0 || r > 1) throw input_error("environmental series: resource rate outside [0,1]");
}

LinearFit fit_control_ability(const EnvironmentalSeries& series, EnvironmentalFactor factor) {
    series.validate();
    const auto& rates = factor == EnvironmentalFactor::Medical ? series.medical_change_rate
                                                               : series.resource_change_rate;
    int n = static_cast<int>(rates.size());
    Eigen::MatrixXd predictors(n, 1);
    Eigen::VectorXd response(n);
    for (int i = 0; i < n; ++i) {
        predictors(i, 0) = rates[i];
        response(i) = series.control_ability[i];
    }
    RegressionModel model = ols_fit(DesignMatrix::with_intercept(predictors, response));
    return {model.coefficients(1), model.coefficients(0)};
}

std::map<std::string, double> reallocation_shares(const NeighborRates& deficit_country,
                                                  std::span<const NeighborRates> neighbors) {
    (void)deficit_country;  // reported by the CLI, not part of the split
    if (neighbors.empty()) throw input_error("reallocation: no neighbors given");
    std::map<std::string, double> shares;
    double total = 0;
    for (const auto& n : neighbors) {
        double environmental = 0.5 * (n.resource_change_rate + n.medical_change_rate);
        double surplus = std::max(0.0, environmental - n.refugee_change_rate);
        if (!shares.emplace(n.country, surplus).second)
            throw input_error("reallocation: duplicate neighbor '" + n.country + "'");
        total += surplus;
    }
    if (total <= 0) throw input_error("reallocation: no neighbor has donatable surplus");
    for (auto& [country, share] : shares) share /= total;
    return shares;
}

TransitionMatrix TransitionMatrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
    TransitionMatrix m;
    m.a.resize(static_cast<long>(rows.size()), static_cast<long>(rows.size()));
    long i = 0;
    for (const auto& row : rows) {
        if (row.size() != rows.size()) throw input_error("transition matrix must be square");
        long j = 0;
        for (double v : row) m.a(i, j++) = v;
        ++i;
    }
    m.validate();
    return m;
}

void TransitionMatrix::validate() const {
    if (a.rows() != a.cols() || a.rows() < 1)
        throw input_error("transition matrix must be square and nonempty");
    for (long j = 0; j < a.cols(); ++j) {
        double sum = 0;
        for (long i = 0; i < a.rows(); ++i) {
            if (a(i, j) < 0 || a(i, j) > 1)
                throw input_error("transition matrix entries must lie in [0,1]");
            sum += a(i, j);
        }
        if (std::fabs(sum - 1.0) > 1e-9)
            throw input_error("transition matrix column " + std::to_string(j) +
                              " sums to " + std::to_string(sum) + ", expected 1");
    }
}

static Eigen::VectorXd to_vector(PopulationState state) {
    if (state.citizen_fraction < 0 || state.refugee_fraction < 0)
        throw input_error("population fractions must be nonnegative");
    if (std::fabs(state.citizen_fraction + state.refugee_fraction - 1.0) > 1e-9)
        throw input_error("population fractions must sum to 1");
    Eigen::VectorXd x(2);
    x << state.citizen_fraction, state.refugee_fraction;
    return x;
}

std::vector<PopulationState> evolve_population(const TransitionMatrix& a, PopulationState x0,
                                               int steps) {
    a.validate();
    if (a.a.rows() != 2) throw input_error("population evolution expects a 2-state matrix");
    if (steps < 0) throw input_error("steps must be nonnegative");
    Eigen::VectorXd x = to_vector(x0);
    std::vector<PopulationState> trajectory;
    trajectory.reserve(steps + 1);
    trajectory.push_back(x0);
    for (int k = 0; k < steps; ++k) {
        x = a.a * x;
        trajectory.push_back({x(0), x(1)});
    }
    return trajectory;
}

SteadyStateResult steady_state(const TransitionMatrix& a, double tol, PopulationState start) {
    a.validate();
    if (a.a.rows() != 2) throw input_error("steady state expects a 2-state matrix");
    if (!(tol > 0)) throw input_error("tolerance must be positive");
    constexpr long long kMaxIterations = 1'000'000;
    Eigen::VectorXd x = to_vector(start);
    for (long long k = 1; k <= kMaxIterations; ++k) {
        Eigen::VectorXd next = a.a * x;
        if ((next - x).lpNorm<Eigen::Infinity>() < tol)
            return {{x(0), x(1)}, k};  // x itself satisfies |A x - x| < tol
        x = next;
    }
    throw solve_error("steady state: no convergence within 1e6 iterations");
}

}  // namespace migrana
