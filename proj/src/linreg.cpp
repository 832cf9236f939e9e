#include "extremes/linreg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "extremes/distributions.hpp"
#include "extremes/error.hpp"

namespace extremes {

namespace {

constexpr double kRankTolerance = 1e-10;

std::string column_name(Eigen::Index j) {
    return j == 0 ? std::string("intercept") : "regressor " + std::to_string(j);
}

}  // namespace

RegressionReport fit_ols(std::span<const double> y,
                         const std::vector<std::vector<double>>& regressors) {
    const auto n = static_cast<Eigen::Index>(y.size());
    const auto k = static_cast<Eigen::Index>(regressors.size() + 1);
    for (std::size_t j = 0; j < regressors.size(); ++j) {
        if (regressors[j].size() != y.size()) {
            throw UsageError("regressor " + std::to_string(j + 1) + " has length " +
                             std::to_string(regressors[j].size()) + ", expected " +
                             std::to_string(y.size()));
        }
    }
    if (n <= k) {
        throw UsageError("need more observations than parameters: n = " + std::to_string(n) +
                         ", k = " + std::to_string(k));
    }

    Eigen::MatrixXd x(n, k);
    Eigen::VectorXd yv(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        yv(i) = y[static_cast<std::size_t>(i)];
        x(i, 0) = 1.0;
        for (Eigen::Index j = 1; j < k; ++j) {
            x(i, j) = regressors[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i)];
        }
    }
    if (!x.allFinite() || !yv.allFinite()) throw DataError("regression input contains non-finite values");

    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
    const Eigen::MatrixXd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < k; ++j) {
        if (std::abs(r(j, j)) <= kRankTolerance * x.col(j).norm()) {
            throw NumericalError("rank-deficient design: " + column_name(j) +
                                 " is a linear combination of the preceding columns");
        }
    }

    const Eigen::VectorXd beta = qr.solve(yv);
    const Eigen::VectorXd fitted = x * beta;
    const Eigen::VectorXd resid = yv - fitted;

    const double mean_y = yv.mean();
    const double sse = resid.squaredNorm();
    const double sst = (yv.array() - mean_y).square().sum();
    const double ssr = (fitted.array() - mean_y).square().sum();

    RegressionReport rep;
    rep.n = static_cast<std::size_t>(n);
    const int df_res = static_cast<int>(n - k);
    const int df_reg = static_cast<int>(k - 1);

    auto& a = rep.anova;
    a.regression_ss = ssr;
    a.residual_ss = sse;
    a.total_ss = sst;
    a.df_regression = df_reg;
    a.df_residual = df_res;
    a.residual_ms = sse / df_res;
    if (df_reg > 0) {
        a.regression_ms = ssr / df_reg;
        a.f_stat = a.residual_ms > 0.0 ? a.regression_ms / a.residual_ms
                                       : std::numeric_limits<double>::infinity();
        a.significance_f = dist::f_upper_tail(a.f_stat, df_reg, df_res);
    }

    rep.r_squared = sst > 0.0 ? 1.0 - sse / sst : 0.0;
    rep.r_multiple = std::sqrt(std::max(0.0, rep.r_squared));
    rep.r_squared_adj = 1.0 - (1.0 - rep.r_squared) * static_cast<double>(n - 1) / df_res;
    rep.std_error_regression = std::sqrt(a.residual_ms);

    // Cov(b) = s^2 (R^T R)^-1 = s^2 R^-1 R^-T
    const Eigen::MatrixXd r_inv =
        r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    const double t_crit = dist::student_t_quantile(0.975, df_res);
    rep.coefficients.reserve(static_cast<std::size_t>(k));
    for (Eigen::Index j = 0; j < k; ++j) {
        CoefficientStat c;
        c.estimate = beta(j);
        c.std_error = rep.std_error_regression * r_inv.row(j).norm();
        if (c.std_error > 0.0) {
            c.t_stat = c.estimate / c.std_error;
        } else {
            c.t_stat = c.estimate == 0.0 ? 0.0
                                         : std::copysign(std::numeric_limits<double>::infinity(),
                                                         c.estimate);
        }
        c.p_value = dist::student_t_two_sided_p(c.t_stat, df_res);
        c.ci_lower_95 = c.estimate - t_crit * c.std_error;
        c.ci_upper_95 = c.estimate + t_crit * c.std_error;
        rep.coefficients.push_back(c);
    }

    rep.fitted.assign(fitted.data(), fitted.data() + n);
    rep.residuals.assign(resid.data(), resid.data() + n);
    return rep;
}

}  // namespace extremes
