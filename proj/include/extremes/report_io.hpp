#pragma once

#include <json.hpp>
#include <string>

#include "extremes/pipeline.hpp"
#include "extremes/residuals.hpp"

namespace extremes {

void to_json(nlohmann::json& j, const SummaryStats& s);
void from_json(const nlohmann::json& j, SummaryStats& s);
void to_json(nlohmann::json& j, const RegressionReport& r);
void from_json(const nlohmann::json& j, RegressionReport& r);
void to_json(nlohmann::json& j, const TrendLine& t);
void from_json(const nlohmann::json& j, TrendLine& t);
void to_json(nlohmann::json& j, const MKResult& m);
void from_json(const nlohmann::json& j, MKResult& m);
void to_json(nlohmann::json& j, const ARModel& m);
void from_json(const nlohmann::json& j, ARModel& m);
void to_json(nlohmann::json& j, const OrderSelectionTrace& t);
void from_json(const nlohmann::json& j, OrderSelectionTrace& t);
void to_json(nlohmann::json& j, const ResidualReport& r);
void from_json(const nlohmann::json& j, ResidualReport& r);
void to_json(nlohmann::json& j, const PipelineReport& r);
void from_json(const nlohmann::json& j, PipelineReport& r);

std::string to_json_text(const PipelineReport& report);
PipelineReport pipeline_report_from_json(const std::string& text);

/// Plain-text rendering with spreadsheet-style regression tables. Numbers
/// are printed with 10 significant digits; skipped sections say so.
std::string render_text(const PipelineReport& report);
std::string render_text(const RegressionReport& report, const std::string& title);
std::string render_text(const ResidualReport& report);

/// `x,y` CSV with one row per point.
std::string plot_csv(const std::vector<PlotPoint>& points);

}  // namespace extremes
