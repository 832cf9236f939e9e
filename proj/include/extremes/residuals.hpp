#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "extremes/autoreg.hpp"
#include "extremes/trend.hpp"

namespace extremes {

struct ResidualRow {
    std::int64_t observation_id = 0;
    double y = 0.0;
    double y_predicted = 0.0;
    double residual = 0.0;
    double standardized = 0.0;
    double percentile = 0.0;  // pct(k) for row k, paired with sorted_y[k]
    bool outlier = false;
};

struct ResidualReport {
    std::vector<ResidualRow> rows;  // fit order
    std::vector<double> sorted_y;
    double scale = 0.0;                 // sqrt(SSE / (n - 1)), divides residuals
    double std_error_regression = 0.0;  // sqrt(SSE / (n - k))
    double outlier_threshold = 3.0;
    bool degenerate = false;            // scale == 0: nothing standardized

    [[nodiscard]] std::vector<std::int64_t> outlier_ids() const;
};

inline constexpr double default_outlier_threshold = 3.0;

/// Residual table from observed and predicted values of a fit with k
/// parameters. Throws UsageError on length mismatch or empty input.
ResidualReport residual_analysis(std::span<const double> y, std::span<const double> y_predicted,
                                 std::size_t k, double outlier_threshold = default_outlier_threshold);

/// Residuals of an AR model on the series it was fitted to. Rows are
/// numbered 1..n-p.
ResidualReport residual_analysis(const ARModel& model, const TimeSeries& series,
                                 double outlier_threshold = default_outlier_threshold);

/// Residuals of a trend line on its series, rows numbered 1..n.
ResidualReport residual_analysis(const TrendLine& line, const TimeSeries& series,
                                 double outlier_threshold = default_outlier_threshold);

/// 100 * (2k - 1) / (2n), k = 1..n.
std::vector<double> percentile_column(std::size_t n);

struct PlotPoint {
    double x = 0.0;
    double y = 0.0;
};

struct PlotData {
    std::vector<PlotPoint> residual_plot;     // (y_predicted, residual)
    std::vector<PlotPoint> probability_plot;  // (percentile, sorted y)
};

PlotData plot_data(const ResidualReport& report);

}  // namespace extremes
