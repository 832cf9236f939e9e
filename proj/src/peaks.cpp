#include "extremes/peaks.hpp"

#include <algorithm>
#include <string>

#include "extremes/error.hpp"

namespace extremes {

EventSeries block_maxima(const TimeSeries& series, std::size_t block_size) {
    if (block_size == 0) throw UsageError("block size must be at least 1");
    if (series.empty()) throw DataError("cannot extract block maxima from an empty series");

    std::vector<Observation> maxima;
    maxima.reserve((series.size() + block_size - 1) / block_size);
    for (std::size_t start = 0; start < series.size(); start += block_size) {
        const std::size_t end = std::min(series.size(), start + block_size);
        Observation best = series[start];
        for (std::size_t i = start + 1; i < end; ++i) {
            if (series[i].value > best.value) best = series[i];
        }
        maxima.push_back(best);
    }
    return {TimeSeries(std::move(maxima)), BlockMaximaTag{block_size}};
}

EventSeries pot_compact(const TimeSeries& series, const ThresholdSpec& spec) {
    std::vector<Observation> kept;
    for (const auto& o : series.observations()) {
        if (spec.passes(o.value)) kept.push_back(o);
    }
    return {TimeSeries(std::move(kept)), PotTag{spec, PotForm::compact}};
}

EventSeries pot_zerofill(const TimeSeries& series, const ThresholdSpec& spec) {
    if (series.empty()) return {TimeSeries{}, PotTag{spec, PotForm::zero_filled}};

    const std::int64_t first = series[0].index;
    const std::int64_t last = series[series.size() - 1].index;
    std::vector<Observation> filled;
    filled.reserve(static_cast<std::size_t>(last - first + 1));
    std::size_t next = 0;
    for (std::int64_t idx = first; idx <= last; ++idx) {
        double value = 0.0;
        if (series[next].index == idx) {
            if (spec.passes(series[next].value)) value = series[next].value;
            ++next;
        }
        filled.push_back({idx, value});
    }
    return {TimeSeries(std::move(filled)), PotTag{spec, PotForm::zero_filled}};
}

}  // namespace extremes
