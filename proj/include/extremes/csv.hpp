#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "extremes/evt_risk.hpp"
#include "extremes/series.hpp"

namespace extremes::io {

enum class DecimalConvention { point, comma };

/// Reads a `month,value` CSV (UTF-8, LF or CRLF). Blank lines are skipped.
///
/// With the comma convention a record is either `month;value` or
/// `month,value` split at the first comma, and the value's decimal comma is
/// converted ("79,195,2" reads as month 79, value 195.2).
///
/// Throws DataError naming the line on any malformed record, on an empty
/// file, and on non-increasing months.
TimeSeries read_series(std::istream& in, DecimalConvention decimal = DecimalConvention::point);
TimeSeries read_series_file(const std::filesystem::path& path,
                            DecimalConvention decimal = DecimalConvention::point);

/// `s,G` records.
HazardCurve read_hazard_file(const std::filesystem::path& path);
/// `s,mean_loss,cov` records.
std::vector<VulnerabilityPoint> read_vulnerability_file(const std::filesystem::path& path);
/// Single-column `x` records.
std::vector<double> read_loss_grid_file(const std::filesystem::path& path);

/// Comma-separated list of numbers, e.g. "0,0.1,0.5".
std::vector<double> parse_number_list(const std::string& text);

}  // namespace extremes::io
