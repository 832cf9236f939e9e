#pragma once

#include <cstddef>
#include <cstdint>

#include "extremes/linreg.hpp"
#include "extremes/series.hpp"

namespace extremes {

/// Fitted mean a + b * t in observation number t = 1..n.
struct TrendLine {
    double intercept = 0.0;
    double slope = 0.0;
    std::size_t source_n = 0;

    [[nodiscard]] double at(double t) const noexcept { return intercept + slope * t; }

    /// Coefficients rounded to the given number of decimals, as a
    /// spreadsheet trend-line label shows them.
    [[nodiscard]] TrendLine rounded(int decimals) const;
};

enum class DetrendMode {
    difference,  // y - yhat
    percent,     // 100 * (y - yhat) / yhat
};

/// OLS of value on observation number. Throws UsageError for n < 3.
TrendLine fit_trend(const TimeSeries& series);

/// Full regression report behind fit_trend.
RegressionReport trend_report(const TimeSeries& series);

/// Removes the line evaluated at observation numbers 1..n. Indices are kept.
/// Percent mode throws NumericalError where the line evaluates to 0.
TimeSeries detrend(const TimeSeries& series, const TrendLine& line,
                   DetrendMode mode = DetrendMode::difference);

enum class TrendDecision { increasing, decreasing, no_trend };

struct MKResult {
    std::int64_t s = 0;
    double var_s = 0.0;
    double z = 0.0;
    double p_value = 1.0;
    bool exact = false;  // p from the exact null distribution of S
    TrendDecision decision = TrendDecision::no_trend;
    double alpha = 0.05;
};

/// Mann-Kendall test for monotone trend, two-sided.
///
/// S counts concordant minus discordant pairs; its variance carries the tie
/// correction. Z uses the continuity-corrected normal approximation. For
/// n <= 10 without ties the p-value is taken from the exact permutation
/// distribution of S, otherwise from Z.
MKResult mann_kendall(const TimeSeries& series, double alpha);

}  // namespace extremes
