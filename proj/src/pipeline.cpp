#include "extremes/pipeline.hpp"

#include <exception>
#include <string>

#include "extremes/error.hpp"

namespace extremes {

namespace {

// Runs one step; failures from the library become a skipped section.
template <typename T, typename Fn>
Section<T> attempt(Fn&& fn) {
    Section<T> s;
    try {
        s.value = fn();
    } catch (const UsageError& e) {
        s.skipped_reason = std::string("usage: ") + e.what();
    } catch (const DataError& e) {
        s.skipped_reason = std::string("data: ") + e.what();
    } catch (const NumericalError& e) {
        s.skipped_reason = std::string("numerical: ") + e.what();
    }
    return s;
}

template <typename T>
Section<T> skipped(std::string reason) {
    Section<T> s;
    s.skipped_reason = std::move(reason);
    return s;
}

}  // namespace

void AnalysisConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("alpha must lie in (0, 1)");
    if (max_lag < 1) throw UsageError("max lag must be at least 1");
    if (!(outlier_threshold > 0.0)) throw UsageError("outlier threshold must be positive");
    if (trend_decimals && (*trend_decimals < 0 || *trend_decimals > 15)) {
        throw UsageError("trend decimals must lie in [0, 15]");
    }
}

PipelineReport run_pipeline(const TimeSeries& input, const AnalysisConfig& config) {
    config.validate();
    PipelineReport rep;
    rep.max_lag = config.max_lag;
    rep.alpha = config.alpha;
    rep.detrend_mode = config.detrend_mode;
    rep.trend_decimals = config.trend_decimals;

    TimeSeries series = input;
    if (config.threshold) {
        series = pot_compact(input, *config.threshold).series;
        rep.pot = PotInfo{*config.threshold, input.size(), series.size()};
    }
    if (series.empty()) throw DataError("no observations left to analyse");
    rep.n = series.size();
    rep.summary_raw = summarize(series);

    rep.trend = attempt<TrendLine>([&] {
        auto line = fit_trend(series);
        return config.trend_decimals ? line.rounded(*config.trend_decimals) : line;
    });

    Section<TimeSeries> detrended;
    if (!config.detrend) {
        detrended = skipped<TimeSeries>("detrending disabled");
    } else if (!rep.trend.present()) {
        detrended = skipped<TimeSeries>("no trend line: " + rep.trend.skipped_reason);
    } else {
        detrended = attempt<TimeSeries>(
            [&] { return detrend(series, *rep.trend.value, config.detrend_mode); });
    }

    rep.summary_detrended = detrended.present()
                                ? attempt<SummaryStats>([&] { return summarize(*detrended.value); })
                                : skipped<SummaryStats>(detrended.skipped_reason);
    rep.mann_kendall = attempt<MKResult>([&] { return mann_kendall(series, config.alpha); });

    for (std::size_t p = 1; p <= config.max_lag; ++p) {
        rep.ar_raw.push_back(attempt<ARModel>([&] { return fit_ar(series, p, SeriesKind::raw); }));
        rep.ar_detrended.push_back(
            detrended.present()
                ? attempt<ARModel>([&] { return fit_ar(*detrended.value, p, SeriesKind::detrended); })
                : skipped<ARModel>(detrended.skipped_reason));
    }

    rep.lag1_raw = attempt<double>([&] { return lag_correlation(series, 1); });
    rep.lag1_detrended = detrended.present()
                             ? attempt<double>([&] { return lag_correlation(*detrended.value, 1); })
                             : skipped<double>(detrended.skipped_reason);

    rep.order_raw = attempt<OrderSelectionTrace>(
        [&] { return select_order(series, config.max_lag, config.alpha); });
    rep.order_detrended =
        detrended.present()
            ? attempt<OrderSelectionTrace>(
                  [&] { return select_order(*detrended.value, config.max_lag, config.alpha); })
            : skipped<OrderSelectionTrace>(detrended.skipped_reason);

    if (rep.ar_raw.front().present()) {
        rep.residuals = attempt<ResidualReport>([&] {
            return residual_analysis(*rep.ar_raw.front().value, series, config.outlier_threshold);
        });
    } else {
        rep.residuals = skipped<ResidualReport>("raw AR(1) unavailable: " +
                                                rep.ar_raw.front().skipped_reason);
    }
    return rep;
}

}  // namespace extremes
