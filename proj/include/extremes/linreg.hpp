#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace extremes {

struct CoefficientStat {
    double estimate = 0.0;
    double std_error = 0.0;
    double t_stat = 0.0;
    double p_value = 1.0;  // two-sided, Student t at n - k df
    double ci_lower_95 = 0.0;
    double ci_upper_95 = 0.0;
};

struct AnovaBlock {
    double regression_ss = 0.0;
    double residual_ss = 0.0;
    double total_ss = 0.0;
    int df_regression = 0;  // k - 1
    int df_residual = 0;    // n - k
    double regression_ms = 0.0;
    double residual_ms = 0.0;
    double f_stat = 0.0;
    double significance_f = 1.0;
};

/// Spreadsheet-style regression summary. Coefficients are ordered intercept
/// first, then regressors in caller order.
struct RegressionReport {
    std::vector<CoefficientStat> coefficients;
    AnovaBlock anova;
    double r_multiple = 0.0;
    double r_squared = 0.0;
    double r_squared_adj = 0.0;
    double std_error_regression = 0.0;
    std::size_t n = 0;

    std::vector<double> fitted;
    std::vector<double> residuals;

    [[nodiscard]] std::size_t k() const noexcept { return coefficients.size(); }
};

/// Ordinary least squares of y on an intercept plus the given regressors.
///
/// Solved by Householder QR. A column whose diagonal entry in R falls below
/// 1e-10 times its own norm is reported as rank-deficient (NumericalError
/// naming the column, 0 = intercept). Throws UsageError on length mismatch or
/// n <= k.
RegressionReport fit_ols(std::span<const double> y,
                         const std::vector<std::vector<double>>& regressors);

}  // namespace extremes
