#pragma once

#include <Eigen/Dense>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace migrana {

// Yearly environmental observations paired with an ordinal control-ability
// reading. Change rates are fractions per year (0.12 = 12%).
struct EnvironmentalSeries {
    std::vector<int> years;
    std::vector<double> medical_change_rate;
    std::vector<double> resource_change_rate;
    std::vector<double> control_ability;

    void validate() const;
};

enum class EnvironmentalFactor { Medical, Resource };

struct LinearFit {
    double slope = 0;
    double intercept = 0;
};

// Simple OLS of control ability against one environmental rate.
LinearFit fit_control_ability(const EnvironmentalSeries& series, EnvironmentalFactor factor);

struct NeighborRates {
    std::string country;
    double refugee_change_rate = 0;
    double resource_change_rate = 0;
    double medical_change_rate = 0;
};

// A neighbor's donatable surplus is the mean of its two environmental
// change rates minus its refugee change rate, clamped at zero; shares are
// surpluses normalized to one. All-zero surpluses mean nobody can donate.
std::map<std::string, double> reallocation_shares(const NeighborRates& deficit_country,
                                                  std::span<const NeighborRates> neighbors);

// Column-stochastic transition over (citizen, refugee) states; the matrix
// size is open for larger state spaces.
struct TransitionMatrix {
    Eigen::MatrixXd a;

    static TransitionMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
    void validate() const;  // entries in [0,1], columns sum to 1
};

struct PopulationState {
    double citizen_fraction = 0;
    double refugee_fraction = 0;
};

// x_{k+1} = A x_k; the trajectory includes the starting state.
std::vector<PopulationState> evolve_population(const TransitionMatrix& a, PopulationState x0,
                                               int steps);

struct SteadyStateResult {
    PopulationState state;
    long long iterations = 0;
};

// Power iteration until |A x - x|_inf < tol; errors out after 1e6 steps.
SteadyStateResult steady_state(const TransitionMatrix& a, double tol = 1e-10,
                               PopulationState start = {0.5, 0.5});

}  // namespace migrana
