#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace extremes {

struct Observation {
    std::int64_t index = 1;  // event time, >= 1
    double value = 0.0;

    friend bool operator==(const Observation&, const Observation&) = default;
};

/// Ordered, immutable sequence of observations with strictly increasing
/// indices. Gaps between indices are allowed.
class TimeSeries {
public:
    TimeSeries() = default;

    /// Throws DataError on non-finite values, index < 1, or indices that are
    /// not strictly increasing.
    explicit TimeSeries(std::vector<Observation> observations);

    /// Series with indices 1..n.
    static TimeSeries from_values(std::span<const double> values);

    [[nodiscard]] std::size_t size() const noexcept { return observations_.size(); }
    [[nodiscard]] bool empty() const noexcept { return observations_.empty(); }
    [[nodiscard]] const std::vector<Observation>& observations() const noexcept {
        return observations_;
    }
    [[nodiscard]] const Observation& operator[](std::size_t i) const { return observations_[i]; }

    [[nodiscard]] std::vector<double> values() const;
    [[nodiscard]] std::vector<std::int64_t> indices() const;

    /// Original indices of a reindexed series (empty unless produced by
    /// reindex()).
    [[nodiscard]] const std::vector<std::int64_t>& source_indices() const noexcept {
        return source_indices_;
    }

    friend bool operator==(const TimeSeries& a, const TimeSeries& b) {
        return a.observations_ == b.observations_;
    }

private:
    friend TimeSeries reindex(const TimeSeries& series);

    std::vector<Observation> observations_;
    std::vector<std::int64_t> source_indices_;
};

struct SummaryStats {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;  // sample, divisor n - 1 (0 when n == 1)
    double std_dev = 0.0;
    double min = 0.0;
    double max = 0.0;
};

/// Descriptive statistics over the values. Throws DataError on empty input.
SummaryStats summarize(const TimeSeries& series);
SummaryStats summarize(std::span<const double> values);

/// Replaces indices with observation numbers 1..n and keeps the originals in
/// source_indices().
TimeSeries reindex(const TimeSeries& series);

}  // namespace extremes
