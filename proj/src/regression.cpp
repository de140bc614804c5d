#include "migrana/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "migrana/errors.hpp"
#include "migrana/log.hpp"
#include "migrana/stats.hpp"

namespace migrana {

namespace {

constexpr double kRankTolerance = 1e-10;  // smallest/largest singular value

Eigen::MatrixXd select_columns(const DesignMatrix& design, const std::vector<int>& included) {
    Eigen::MatrixXd sub(design.n(), included.size() + 1);
    sub.col(0) = design.values.col(0);
    for (size_t i = 0; i < included.size(); ++i) {
        int j = included[i];
        if (j < 1 || j > design.k())
            throw input_error("predictor index out of range: x" + std::to_string(j));
        sub.col(static_cast<int>(i) + 1) = design.values.col(j);
    }
    return sub;
}

std::string column_name(const std::vector<int>& included, int sub_col) {
    return sub_col == 0 ? std::string("intercept") : "x" + std::to_string(included[sub_col - 1]);
}

}  // namespace

DesignMatrix DesignMatrix::with_intercept(const Eigen::MatrixXd& predictors,
                                          const Eigen::VectorXd& response) {
    DesignMatrix design;
    design.values.resize(predictors.rows(), predictors.cols() + 1);
    design.values.col(0).setOnes();
    design.values.rightCols(predictors.cols()) = predictors;
    design.response = response;
    design.validate();
    return design;
}

void DesignMatrix::validate() const {
    if (response.size() != values.rows())
        throw input_error("design/response length mismatch");
    if (n() <= k() + 1)
        throw input_error("need more rows than coefficients: n=" + std::to_string(n()) +
                          ", k=" + std::to_string(k()));
    if ((values.col(0).array() != 1.0).any())
        throw input_error("first design column must be the intercept (all ones)");
}

RegressionModel ols_fit(const DesignMatrix& design) {
    std::vector<int> all(design.k());
    for (int j = 0; j < design.k(); ++j) all[j] = j + 1;
    return ols_fit_subset(design, all);
}

RegressionModel ols_fit_subset(const DesignMatrix& design, const std::vector<int>& included) {
    design.validate();
    std::vector<int> sorted = included;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw input_error("duplicate predictor index in subset");
    if (design.n() <= static_cast<int>(sorted.size()) + 1)
        throw input_error("subset leaves no residual degrees of freedom");

    Eigen::MatrixXd sub = select_columns(design, sorted);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) < kRankTolerance * sv(0)) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sub);
        qr.setThreshold(kRankTolerance);
        int rank = static_cast<int>(qr.rank());
        std::ostringstream msg;
        msg << "singular design, dependent column(s):";
        for (int c = rank; c < sub.cols(); ++c)
            msg << " " << column_name(sorted, qr.colsPermutation().indices()(c));
        throw input_error(msg.str());
    }

    RegressionModel model;
    model.included = std::move(sorted);
    model.coefficients = sub.householderQr().solve(design.response);
    Eigen::VectorXd residuals = design.response - sub * model.coefficients;
    model.residual_sum_squares = residuals.squaredNorm();
    int dof = design.n() - static_cast<int>(model.included.size()) - 1;
    model.sigma2_hat = model.residual_sum_squares / dof;
    return model;
}

FitDiagnostics diagnostics(const RegressionModel& model, const DesignMatrix& design) {
    design.validate();
    int n = design.n();
    int p = static_cast<int>(model.included.size());
    int dof = n - p - 1;
    if (dof <= 0) throw input_error("no residual degrees of freedom: n=" + std::to_string(n) +
                                    ", predictors=" + std::to_string(p));

    Eigen::MatrixXd sub = select_columns(design, model.included);
    double mean = design.response.mean();
    double tss = (design.response.array() - mean).square().sum();
    double rss = model.residual_sum_squares;
    double ess = tss - rss;

    FitDiagnostics diag;
    diag.r_squared = tss > 0 ? std::clamp(1.0 - rss / tss, 0.0, 1.0) : 1.0;
    diag.adjusted_r_squared =
        p > 0 ? 1.0 - (1.0 - diag.r_squared) * (n - 1) / static_cast<double>(dof)
              : diag.r_squared;
    if (p == 0) {
        diag.f_statistic = 0;
        diag.f_p_value = 1;
    } else if (rss <= 0) {
        diag.f_statistic = std::numeric_limits<double>::infinity();
        diag.f_p_value = 0;
    } else {
        diag.f_statistic = (ess / p) / (rss / dof);
        diag.f_p_value = stats::f_upper_p(diag.f_statistic, p, dof);
    }

    // standard errors from (X'X)^-1 via the SVD: V diag(1/s^2) V'
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    Eigen::MatrixXd v = svd.matrixV();
    diag.t_statistics.resize(p + 1);
    diag.t_p_values.resize(p + 1);
    for (int j = 0; j <= p; ++j) {
        double diag_entry = 0;
        for (int r = 0; r < sv.size(); ++r) diag_entry += v(j, r) * v(j, r) / (sv(r) * sv(r));
        double se = std::sqrt(model.sigma2_hat * diag_entry);
        double beta = model.coefficients(j);
        double t;
        if (se > 0) {
            t = beta / se;
        } else {
            t = beta == 0 ? 0.0
                          : std::copysign(std::numeric_limits<double>::infinity(), beta);
        }
        diag.t_statistics(j) = t;
        diag.t_p_values(j) = std::isinf(t) ? 0.0 : stats::student_t_two_sided_p(t, dof);
    }
    return diag;
}

namespace {

// Two-sided p-value of predictor j inside the model {included U {j}}.
double partial_p_value(const DesignMatrix& design, const std::vector<int>& included, int j) {
    std::vector<int> with = included;
    if (std::find(with.begin(), with.end(), j) == with.end()) with.push_back(j);
    std::sort(with.begin(), with.end());
    RegressionModel model = ols_fit_subset(design, with);
    FitDiagnostics diag = diagnostics(model, design);
    auto pos = std::find(with.begin(), with.end(), j) - with.begin();
    return diag.t_p_values(pos + 1);
}

}  // namespace

RegressionModel stepwise_select(const DesignMatrix& design, double enter_p, double exit_p) {
    design.validate();
    if (enter_p > exit_p)
        throw input_error("enter_p must not exceed exit_p");

    std::vector<int> included;
    constexpr int kMaxSweeps = 1000;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool changed = false;

        // forward: admit the most significant candidate below enter_p,
        // lower index first on ties
        int best = -1;
        double best_p = std::numeric_limits<double>::infinity();
        for (int j = 1; j <= design.k(); ++j) {
            if (std::find(included.begin(), included.end(), j) != included.end()) continue;
            if (design.n() <= static_cast<int>(included.size()) + 2) break;
            double p;
            try {
                p = partial_p_value(design, included, j);
            } catch (const Error&) {
                continue;  // candidate makes the design singular
            }
            if (p < best_p) {
                best_p = p;
                best = j;
            }
        }
        if (best >= 0 && best_p < enter_p) {
            included.push_back(best);
            std::sort(included.begin(), included.end());
            log::debug("stepwise: enter x", best, " (p=", best_p, ")");
            changed = true;
        }

        // backward: drop the least significant member at or above exit_p,
        // higher index first on ties
        if (!included.empty()) {
            RegressionModel model = ols_fit_subset(design, included);
            FitDiagnostics diag = diagnostics(model, design);
            int worst = -1;
            double worst_p = -1;
            for (size_t i = 0; i < included.size(); ++i) {
                double p = diag.t_p_values(static_cast<int>(i) + 1);
                if (p >= worst_p) {
                    worst_p = p;
                    worst = included[i];
                }
            }
            if (worst >= 0 && worst_p >= exit_p) {
                included.erase(std::remove(included.begin(), included.end(), worst),
                               included.end());
                log::debug("stepwise: drop x", worst, " (p=", worst_p, ")");
                changed = true;
            }
        }

        if (!changed) return ols_fit_subset(design, included);
    }
    throw solve_error("stepwise selection did not stabilize");
}

}  // namespace migrana
