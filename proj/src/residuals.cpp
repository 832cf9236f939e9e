#include "extremes/residuals.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "extremes/error.hpp"

namespace extremes {

std::vector<double> percentile_column(std::size_t n) {
    if (n == 0) throw UsageError("percentile column needs n >= 1");
    std::vector<double> pct(n);
    const auto nn = static_cast<double>(n);
    for (std::size_t k = 1; k <= n; ++k) {
        pct[k - 1] = 100.0 * (2.0 * static_cast<double>(k) - 1.0) / (2.0 * nn);
    }
    return pct;
}

std::vector<std::int64_t> ResidualReport::outlier_ids() const {
    std::vector<std::int64_t> ids;
    for (const auto& r : rows) {
        if (r.outlier) ids.push_back(r.observation_id);
    }
    return ids;
}

ResidualReport residual_analysis(std::span<const double> y, std::span<const double> y_predicted,
                                 std::size_t k, double outlier_threshold) {
    if (y.size() != y_predicted.size()) {
        throw UsageError("observed and predicted lengths differ: " + std::to_string(y.size()) +
                         " vs " + std::to_string(y_predicted.size()));
    }
    if (y.empty()) throw UsageError("residual analysis needs at least one row");
    if (!(outlier_threshold > 0.0)) throw UsageError("outlier threshold must be positive");

    const std::size_t n = y.size();
    ResidualReport rep;
    rep.outlier_threshold = outlier_threshold;
    rep.rows.resize(n);

    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        auto& row = rep.rows[i];
        row.observation_id = static_cast<std::int64_t>(i + 1);
        row.y = y[i];
        row.y_predicted = y_predicted[i];
        row.residual = y[i] - y_predicted[i];
        sse += row.residual * row.residual;
    }
    rep.scale = n > 1 ? std::sqrt(sse / static_cast<double>(n - 1)) : 0.0;
    rep.std_error_regression = n > k ? std::sqrt(sse / static_cast<double>(n - k)) : 0.0;
    rep.degenerate = !(rep.scale > 0.0);

    const auto pct = percentile_column(n);
    rep.sorted_y.assign(y.begin(), y.end());
    std::sort(rep.sorted_y.begin(), rep.sorted_y.end());
    for (std::size_t i = 0; i < n; ++i) {
        auto& row = rep.rows[i];
        row.percentile = pct[i];
        if (!rep.degenerate) {
            row.standardized = row.residual / rep.scale;
            row.outlier = std::fabs(row.standardized) > outlier_threshold;
        }
    }
    return rep;
}

ResidualReport residual_analysis(const ARModel& model, const TimeSeries& series,
                                 double outlier_threshold) {
    const auto values = series.values();
    const auto design = build_lagged_design(values, model.p);
    if (design.y.size() != model.report.fitted.size()) {
        throw UsageError("AR model was fitted on " + std::to_string(model.report.n) +
                         " rows, series gives " + std::to_string(design.y.size()));
    }
    return residual_analysis(design.y, model.report.fitted, model.report.k(), outlier_threshold);
}

ResidualReport residual_analysis(const TrendLine& line, const TimeSeries& series,
                                 double outlier_threshold) {
    if (line.source_n != 0 && line.source_n != series.size()) {
        throw UsageError("trend line was fitted on " + std::to_string(line.source_n) +
                         " observations, series has " + std::to_string(series.size()));
    }
    const auto values = series.values();
    std::vector<double> predicted(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) predicted[i] = line.at(static_cast<double>(i + 1));
    return residual_analysis(values, predicted, 2, outlier_threshold);
}

PlotData plot_data(const ResidualReport& report) {
    PlotData out;
    out.residual_plot.reserve(report.rows.size());
    out.probability_plot.reserve(report.rows.size());
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& row = report.rows[i];
        out.residual_plot.push_back({row.y_predicted, row.residual});
        out.probability_plot.push_back({row.percentile, report.sorted_y[i]});
    }
    return out;
}

}  // namespace extremes
