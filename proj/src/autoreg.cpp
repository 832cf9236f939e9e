#include "extremes/autoreg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "extremes/distributions.hpp"
#include "extremes/error.hpp"

namespace extremes {

LaggedDesign build_lagged_design(std::span<const double> values, std::size_t p) {
    if (p == 0) throw UsageError("lag order must be at least 1");
    if (values.size() < p + 3) {
        throw UsageError("AR(" + std::to_string(p) + ") needs at least " + std::to_string(p + 3) +
                         " observations, got " + std::to_string(values.size()));
    }
    const std::size_t rows = values.size() - p;
    LaggedDesign d;
    d.p = p;
    d.y.assign(values.begin() + static_cast<std::ptrdiff_t>(p), values.end());
    d.lag_columns.resize(p);
    for (std::size_t lag = 1; lag <= p; ++lag) {
        auto& col = d.lag_columns[lag - 1];
        col.reserve(rows);
        for (std::size_t r = 0; r < rows; ++r) col.push_back(values[p + r - lag]);
    }
    return d;
}

ARModel fit_ar(const TimeSeries& series, std::size_t p, SeriesKind kind) {
    const auto values = series.values();
    const auto design = build_lagged_design(values, p);
    ARModel m;
    m.p = p;
    m.fitted_on = kind;
    m.report = fit_ols(design.y, design.lag_columns);
    m.b0 = m.report.coefficients[0].estimate;
    for (std::size_t i = 1; i <= p; ++i) m.b.push_back(m.report.coefficients[i].estimate);
    return m;
}

double critical_z(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("alpha must lie in (0, 1)");
    static constexpr std::array<std::pair<double, double>, 5> kTable{{
        {0.1, 1.645},
        {0.05, 1.960},
        {0.02, 2.326},
        {0.01, 2.576},
        {0.001, 3.291},
    }};
    for (const auto& [level, z] : kTable) {
        if (std::fabs(alpha - level) < 1e-12) return z;
    }
    return dist::normal_quantile(1.0 - 0.5 * alpha);
}

OrderSelectionTrace select_order(const TimeSeries& series, std::size_t max_p, double alpha) {
    if (max_p == 0) throw UsageError("maximum lag must be at least 1");
    OrderSelectionTrace trace;
    trace.alpha = alpha;
    const double z_alpha = critical_z(alpha);

    for (std::size_t p = max_p; p >= 1; --p) {
        const auto model = fit_ar(series, p);
        const auto& top = model.report.coefficients.back();
        OrderStep step;
        step.p = p;
        step.coefficient = top.estimate;
        step.std_error = top.std_error;
        step.z = top.t_stat;
        step.z_alpha = z_alpha;
        // -Z_alpha <= Z <= Z_alpha keeps H0, so the lag is dropped.
        step.decision = std::fabs(step.z) > z_alpha ? OrderDecision::keep : OrderDecision::drop;
        trace.steps.push_back(step);
        if (step.decision == OrderDecision::keep) {
            trace.selected_order = p;
            break;
        }
    }
    return trace;
}

double lag_correlation(const TimeSeries& series, std::size_t lag) {
    const auto v = series.values();
    if (v.size() < lag + 3) {
        throw UsageError("lag " + std::to_string(lag) + " correlation needs at least " +
                         std::to_string(lag + 3) + " observations, got " + std::to_string(v.size()));
    }
    const std::size_t m = v.size() - lag;
    double mean_now = 0.0;
    double mean_lagged = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
        mean_now += v[lag + r];
        mean_lagged += v[r];
    }
    mean_now /= static_cast<double>(m);
    mean_lagged /= static_cast<double>(m);

    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
        const double a = v[lag + r] - mean_now;
        const double b = v[r] - mean_lagged;
        sxy += a * b;
        sxx += a * a;
        syy += b * b;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw NumericalError("lag correlation undefined: constant values in the overlap");
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace extremes
