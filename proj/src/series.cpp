#include "extremes/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "extremes/error.hpp"

namespace extremes {

TimeSeries::TimeSeries(std::vector<Observation> observations)
    : observations_(std::move(observations)) {
    for (std::size_t i = 0; i < observations_.size(); ++i) {
        const auto& o = observations_[i];
        if (!std::isfinite(o.value)) {
            throw DataError("observation " + std::to_string(i + 1) + " has a non-finite value");
        }
        if (o.index < 1) {
            throw DataError("observation " + std::to_string(i + 1) + " has index " +
                            std::to_string(o.index) + " (must be >= 1)");
        }
        if (i > 0 && o.index <= observations_[i - 1].index) {
            throw DataError("indices must be strictly increasing: " +
                            std::to_string(observations_[i - 1].index) + " followed by " +
                            std::to_string(o.index));
        }
    }
}

TimeSeries TimeSeries::from_values(std::span<const double> values) {
    std::vector<Observation> obs;
    obs.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        obs.push_back({static_cast<std::int64_t>(i + 1), values[i]});
    }
    return TimeSeries(std::move(obs));
}

std::vector<double> TimeSeries::values() const {
    std::vector<double> out;
    out.reserve(observations_.size());
    for (const auto& o : observations_) out.push_back(o.value);
    return out;
}

std::vector<std::int64_t> TimeSeries::indices() const {
    std::vector<std::int64_t> out;
    out.reserve(observations_.size());
    for (const auto& o : observations_) out.push_back(o.index);
    return out;
}

SummaryStats summarize(std::span<const double> values) {
    if (values.empty()) throw DataError("cannot summarize an empty series");

    SummaryStats s;
    s.n = values.size();
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    s.min = *lo;
    s.max = *hi;

    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(s.n);
    // The mean of equal values can round outside [min, max] by an ulp.
    s.mean = std::clamp(s.mean, s.min, s.max);

    if (s.n > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.variance = ss / static_cast<double>(s.n - 1);
    }
    s.std_dev = std::sqrt(s.variance);
    return s;
}

SummaryStats summarize(const TimeSeries& series) {
    const auto values = series.values();
    return summarize(std::span<const double>(values));
}

TimeSeries reindex(const TimeSeries& series) {
    if (series.empty()) throw DataError("cannot reindex an empty series");
    TimeSeries out;
    out.observations_.reserve(series.size());
    out.source_indices_ = series.source_indices().empty() ? series.indices()
                                                          : series.source_indices();
    for (std::size_t i = 0; i < series.size(); ++i) {
        out.observations_.push_back({static_cast<std::int64_t>(i + 1), series[i].value});
    }
    return out;
}

}  // namespace extremes
