#pragma once

#include <cstddef>
#include <variant>

#include "extremes/series.hpp"

namespace extremes {

enum class Comparison { strictly_above, at_or_above };

struct ThresholdSpec {
    double threshold = 0.0;
    Comparison comparison = Comparison::strictly_above;

    [[nodiscard]] bool passes(double value) const noexcept {
        return comparison == Comparison::strictly_above ? value > threshold : value >= threshold;
    }
};

struct BlockMaximaTag {
    std::size_t block_size = 1;
};

enum class PotForm { compact, zero_filled };

struct PotTag {
    ThresholdSpec spec;
    PotForm form = PotForm::compact;
};

/// Extracted extremes together with how they were extracted.
struct EventSeries {
    TimeSeries series;
    std::variant<BlockMaximaTag, PotTag> provenance;
};

/// One observation per run of block_size consecutive positions (the last
/// block may be short), keeping the index of the block's maximum. Ties go to
/// the earliest index.
EventSeries block_maxima(const TimeSeries& series, std::size_t block_size);

/// Keeps only observations that pass the threshold; original indices are
/// preserved, so the result has gaps. An empty result is legal.
EventSeries pot_compact(const TimeSeries& series, const ThresholdSpec& spec);

/// Covers every integer index from the first to the last input index. Slots
/// that fail the threshold, and slots missing from the input, hold 0.
EventSeries pot_zerofill(const TimeSeries& series, const ThresholdSpec& spec);

}  // namespace extremes
