#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "extremes/autoreg.hpp"
#include "extremes/csv.hpp"
#include "extremes/peaks.hpp"
#include "extremes/residuals.hpp"
#include "extremes/series.hpp"
#include "extremes/trend.hpp"

namespace extremes {

inline constexpr int kSchemaVersion = 1;

struct AnalysisConfig {
    std::string input_path;
    io::DecimalConvention decimal = io::DecimalConvention::point;
    std::optional<ThresholdSpec> threshold;
    std::size_t max_lag = 3;
    double alpha = 0.05;
    bool detrend = true;
    DetrendMode detrend_mode = DetrendMode::percent;
    std::optional<int> trend_decimals;  // round the trend line before detrending
    double outlier_threshold = default_outlier_threshold;

    /// Throws UsageError when alpha is outside (0, 1), max_lag is 0 or the
    /// outlier threshold is not positive.
    void validate() const;
};

/// A pipeline step's output, or the reason it was skipped.
template <typename T>
struct Section {
    std::optional<T> value;
    std::string skipped_reason;

    [[nodiscard]] bool present() const noexcept { return value.has_value(); }
};

struct PotInfo {
    ThresholdSpec spec;
    std::size_t input_n = 0;
    std::size_t kept_n = 0;
};

struct PipelineReport {
    int schema_version = kSchemaVersion;
    std::size_t n = 0;  // observations analysed (after POT)
    std::optional<PotInfo> pot;
    std::size_t max_lag = 3;
    double alpha = 0.05;
    DetrendMode detrend_mode = DetrendMode::percent;
    std::optional<int> trend_decimals;

    SummaryStats summary_raw;
    Section<SummaryStats> summary_detrended;
    Section<TrendLine> trend;
    Section<MKResult> mann_kendall;
    std::vector<Section<ARModel>> ar_raw;       // p = 1..max_lag
    std::vector<Section<ARModel>> ar_detrended;  // p = 1..max_lag
    Section<double> lag1_raw;
    Section<double> lag1_detrended;
    Section<OrderSelectionTrace> order_raw;
    Section<OrderSelectionTrace> order_detrended;
    Section<ResidualReport> residuals;  // raw AR(1)
};

/// POT (when configured) -> summary -> trend -> detrend -> Mann-Kendall ->
/// AR(1..max_lag) on raw and detrended -> lag-1 correlation -> order
/// selection -> residuals of raw AR(1). A failing step is recorded as
/// skipped with its diagnostic.
PipelineReport run_pipeline(const TimeSeries& series, const AnalysisConfig& config);

}  // namespace extremes
