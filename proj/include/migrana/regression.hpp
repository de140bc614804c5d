#pragma once

#include <Eigen/Dense>
#include <vector>

namespace migrana {

// Design with a leading intercept column of ones. Predictor indices used
// throughout the regression API are 1-based (x1..xk); column 0 is the
// intercept.
struct DesignMatrix {
    Eigen::MatrixXd values;  // n x (k+1)
    Eigen::VectorXd response;

    int n() const { return static_cast<int>(values.rows()); }
    int k() const { return static_cast<int>(values.cols()) - 1; }

    // Prepends the intercept column. Requires n > k+1.
    static DesignMatrix with_intercept(const Eigen::MatrixXd& predictors,
                                       const Eigen::VectorXd& response);
    void validate() const;
};

struct RegressionModel {
    Eigen::VectorXd coefficients;  // intercept followed by included predictors
    std::vector<int> included;     // ascending predictor indices
    double residual_sum_squares = 0;
    double sigma2_hat = 0;
};

struct FitDiagnostics {
    double f_statistic = 0;
    double f_p_value = 1;
    Eigen::VectorXd t_statistics;  // aligned with model coefficients
    Eigen::VectorXd t_p_values;
    double r_squared = 0;
    double adjusted_r_squared = 0;
};

// Least-squares fit of all predictors (or an explicit subset). The solve
// goes through an orthogonal decomposition; a design whose singular value
// ratio falls below 1e-10 is rejected naming the dependent columns.
RegressionModel ols_fit(const DesignMatrix& design);
RegressionModel ols_fit_subset(const DesignMatrix& design, const std::vector<int>& included);

FitDiagnostics diagnostics(const RegressionModel& model, const DesignMatrix& design);

// Forward selection / backward elimination on partial t-test p-values.
// Requires enter_p <= exit_p so the procedure cannot cycle.
RegressionModel stepwise_select(const DesignMatrix& design, double enter_p = 0.05,
                                double exit_p = 0.10);

}  // namespace migrana
