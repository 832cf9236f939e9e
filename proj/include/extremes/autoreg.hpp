#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "extremes/linreg.hpp"
#include "extremes/series.hpp"

namespace extremes {

/// Rows of an AR(p) regression: y holds values p+1..n and lag_columns[i - 1]
/// holds the same rows shifted back by i positions.
struct LaggedDesign {
    std::size_t p = 1;
    std::vector<double> y;
    std::vector<std::vector<double>> lag_columns;
};

/// Throws UsageError unless values.size() >= p + 3.
LaggedDesign build_lagged_design(std::span<const double> values, std::size_t p);

enum class SeriesKind { raw, detrended };

struct ARModel {
    std::size_t p = 1;
    double b0 = 0.0;
    std::vector<double> b;  // b_1..b_p
    RegressionReport report;
    SeriesKind fitted_on = SeriesKind::raw;
};

/// AR(p) by OLS on the positional lagged design (month gaps are ignored).
ARModel fit_ar(const TimeSeries& series, std::size_t p, SeriesKind kind = SeriesKind::raw);

enum class OrderDecision { drop, keep };

struct OrderStep {
    std::size_t p = 0;
    double coefficient = 0.0;  // b_p
    double std_error = 0.0;    // S(b_p)
    double z = 0.0;
    double z_alpha = 0.0;
    OrderDecision decision = OrderDecision::drop;
};

struct OrderSelectionTrace {
    std::vector<OrderStep> steps;  // p strictly decreasing
    std::size_t selected_order = 0;
    double alpha = 0.05;
};

/// Critical value Z_alpha for the two-sided test of the highest-order
/// coefficient: the tabulated value for alpha in {0.1, 0.05, 0.02, 0.01,
/// 0.001}, the normal quantile 1 - alpha/2 otherwise.
double critical_z(double alpha);

/// Top-down elimination: fit AR(max_p), keep it if |b_p / S(b_p)| > Z_alpha,
/// otherwise drop the highest lag and refit, down to order 0.
OrderSelectionTrace select_order(const TimeSeries& series, std::size_t max_p, double alpha);

/// Pearson correlation of y_t with y_{t-lag} over the overlapping pairs.
/// Throws UsageError if fewer than 3 pairs, NumericalError if either side is
/// constant.
double lag_correlation(const TimeSeries& series, std::size_t lag);

}  // namespace extremes
