#include "extremes/report_io.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <cmath>
#include <limits>
#include <string>

#include "extremes/error.hpp"

namespace extremes {

using nlohmann::json;

namespace {

// Non-finite numbers are written as null and read back as NaN.
double num(const json& j, const char* key) {
    const auto& v = j.at(key);
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

std::string to_string(DetrendMode m) { return m == DetrendMode::percent ? "percent" : "difference"; }
DetrendMode detrend_mode_from(const std::string& s) {
    if (s == "percent") return DetrendMode::percent;
    if (s == "difference") return DetrendMode::difference;
    throw DataError("unknown detrend mode `" + s + "`");
}

std::string to_string(TrendDecision d) {
    switch (d) {
        case TrendDecision::increasing: return "increasing";
        case TrendDecision::decreasing: return "decreasing";
        case TrendDecision::no_trend: break;
    }
    return "no_trend";
}
TrendDecision trend_decision_from(const std::string& s) {
    if (s == "increasing") return TrendDecision::increasing;
    if (s == "decreasing") return TrendDecision::decreasing;
    if (s == "no_trend") return TrendDecision::no_trend;
    throw DataError("unknown trend decision `" + s + "`");
}

std::string to_string(Comparison c) {
    return c == Comparison::strictly_above ? "strictly_above" : "at_or_above";
}
Comparison comparison_from(const std::string& s) {
    if (s == "strictly_above") return Comparison::strictly_above;
    if (s == "at_or_above") return Comparison::at_or_above;
    throw DataError("unknown comparison `" + s + "`");
}

std::string to_string(SeriesKind k) { return k == SeriesKind::raw ? "raw" : "detrended"; }

std::string to_string(OrderDecision d) { return d == OrderDecision::keep ? "keep" : "drop"; }

// `name` goes into the skipped map when the section is absent.
template <typename T>
void put(json& j, json& skipped, const std::string& name, const Section<T>& s) {
    if (s.present()) {
        j[name] = *s.value;
    } else {
        skipped[name] = s.skipped_reason;
    }
}

template <typename T>
Section<T> take(const json& j, const std::string& name) {
    Section<T> s;
    if (j.contains(name)) {
        s.value = j.at(name).get<T>();
    } else {
        s.skipped_reason = j.at("skipped").value(name, std::string("missing"));
    }
    return s;
}

std::string fmt_num(double v) { return fmt::format("{:.10g}", v); }

}  // namespace

void to_json(json& j, const SummaryStats& s) {
    j = json{{"n", s.n},           {"mean", s.mean}, {"variance", s.variance},
             {"std_dev", s.std_dev}, {"min", s.min},   {"max", s.max}};
}
void from_json(const json& j, SummaryStats& s) {
    s.n = j.at("n").get<std::size_t>();
    s.mean = num(j, "mean");
    s.variance = num(j, "variance");
    s.std_dev = num(j, "std_dev");
    s.min = num(j, "min");
    s.max = num(j, "max");
}

void to_json(json& j, const RegressionReport& r) {
    json coefs = json::array();
    for (const auto& c : r.coefficients) {
        coefs.push_back({{"estimate", c.estimate},
                         {"std_error", c.std_error},
                         {"t_stat", c.t_stat},
                         {"p_value", c.p_value},
                         {"ci_lower_95", c.ci_lower_95},
                         {"ci_upper_95", c.ci_upper_95}});
    }
    const auto& a = r.anova;
    j = json{{"n", r.n},
             {"r_multiple", r.r_multiple},
             {"r_squared", r.r_squared},
             {"r_squared_adj", r.r_squared_adj},
             {"std_error_regression", r.std_error_regression},
             {"anova",
              {{"regression_ss", a.regression_ss},
               {"residual_ss", a.residual_ss},
               {"total_ss", a.total_ss},
               {"df_regression", a.df_regression},
               {"df_residual", a.df_residual},
               {"regression_ms", a.regression_ms},
               {"residual_ms", a.residual_ms},
               {"f_stat", a.f_stat},
               {"significance_f", a.significance_f}}},
             {"coefficients", coefs},
             {"fitted", r.fitted},
             {"residuals", r.residuals}};
}
void from_json(const json& j, RegressionReport& r) {
    r.n = j.at("n").get<std::size_t>();
    r.r_multiple = num(j, "r_multiple");
    r.r_squared = num(j, "r_squared");
    r.r_squared_adj = num(j, "r_squared_adj");
    r.std_error_regression = num(j, "std_error_regression");
    const auto& a = j.at("anova");
    r.anova.regression_ss = num(a, "regression_ss");
    r.anova.residual_ss = num(a, "residual_ss");
    r.anova.total_ss = num(a, "total_ss");
    r.anova.df_regression = a.at("df_regression").get<int>();
    r.anova.df_residual = a.at("df_residual").get<int>();
    r.anova.regression_ms = num(a, "regression_ms");
    r.anova.residual_ms = num(a, "residual_ms");
    r.anova.f_stat = num(a, "f_stat");
    r.anova.significance_f = num(a, "significance_f");
    r.coefficients.clear();
    for (const auto& c : j.at("coefficients")) {
        r.coefficients.push_back({num(c, "estimate"), num(c, "std_error"), num(c, "t_stat"),
                                  num(c, "p_value"), num(c, "ci_lower_95"), num(c, "ci_upper_95")});
    }
    r.fitted = j.at("fitted").get<std::vector<double>>();
    r.residuals = j.at("residuals").get<std::vector<double>>();
}

void to_json(json& j, const TrendLine& t) {
    j = json{{"intercept", t.intercept}, {"slope", t.slope}, {"source_n", t.source_n}};
}
void from_json(const json& j, TrendLine& t) {
    t.intercept = num(j, "intercept");
    t.slope = num(j, "slope");
    t.source_n = j.at("source_n").get<std::size_t>();
}

void to_json(json& j, const MKResult& m) {
    j = json{{"s", m.s},           {"var_s", m.var_s}, {"z", m.z},
             {"p_value", m.p_value}, {"exact", m.exact}, {"decision", to_string(m.decision)},
             {"alpha", m.alpha}};
}
void from_json(const json& j, MKResult& m) {
    m.s = j.at("s").get<std::int64_t>();
    m.var_s = num(j, "var_s");
    m.z = num(j, "z");
    m.p_value = num(j, "p_value");
    m.exact = j.at("exact").get<bool>();
    m.decision = trend_decision_from(j.at("decision").get<std::string>());
    m.alpha = num(j, "alpha");
}

void to_json(json& j, const ARModel& m) {
    j = json{{"p", m.p},
             {"fitted_on", to_string(m.fitted_on)},
             {"b0", m.b0},
             {"b", m.b},
             {"report", m.report}};
}
void from_json(const json& j, ARModel& m) {
    m.p = j.at("p").get<std::size_t>();
    m.fitted_on = j.at("fitted_on").get<std::string>() == "raw" ? SeriesKind::raw : SeriesKind::detrended;
    m.b0 = num(j, "b0");
    m.b = j.at("b").get<std::vector<double>>();
    m.report = j.at("report").get<RegressionReport>();
}

void to_json(json& j, const OrderSelectionTrace& t) {
    json steps = json::array();
    for (const auto& s : t.steps) {
        steps.push_back({{"p", s.p},
                         {"coefficient", s.coefficient},
                         {"std_error", s.std_error},
                         {"z", s.z},
                         {"z_alpha", s.z_alpha},
                         {"decision", to_string(s.decision)}});
    }
    j = json{{"steps", steps}, {"selected_order", t.selected_order}, {"alpha", t.alpha}};
}
void from_json(const json& j, OrderSelectionTrace& t) {
    t.steps.clear();
    for (const auto& s : j.at("steps")) {
        t.steps.push_back({s.at("p").get<std::size_t>(), num(s, "coefficient"), num(s, "std_error"),
                           num(s, "z"), num(s, "z_alpha"),
                           s.at("decision").get<std::string>() == "keep" ? OrderDecision::keep
                                                                         : OrderDecision::drop});
    }
    t.selected_order = j.at("selected_order").get<std::size_t>();
    t.alpha = num(j, "alpha");
}

void to_json(json& j, const ResidualReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"observation_id", row.observation_id},
                        {"y", row.y},
                        {"y_predicted", row.y_predicted},
                        {"residual", row.residual},
                        {"standardized", row.standardized},
                        {"percentile", row.percentile},
                        {"outlier", row.outlier}});
    }
    j = json{{"rows", rows},
             {"sorted_y", r.sorted_y},
             {"scale", r.scale},
             {"std_error_regression", r.std_error_regression},
             {"outlier_threshold", r.outlier_threshold},
             {"degenerate", r.degenerate},
             {"outliers", r.outlier_ids()}};
}
void from_json(const json& j, ResidualReport& r) {
    r.rows.clear();
    for (const auto& row : j.at("rows")) {
        r.rows.push_back({row.at("observation_id").get<std::int64_t>(), num(row, "y"),
                          num(row, "y_predicted"), num(row, "residual"), num(row, "standardized"),
                          num(row, "percentile"), row.at("outlier").get<bool>()});
    }
    r.sorted_y = j.at("sorted_y").get<std::vector<double>>();
    r.scale = num(j, "scale");
    r.std_error_regression = num(j, "std_error_regression");
    r.outlier_threshold = num(j, "outlier_threshold");
    r.degenerate = j.at("degenerate").get<bool>();
}

void to_json(json& j, const PipelineReport& r) {
    json skipped = json::object();
    json config{{"max_lag", r.max_lag}, {"alpha", r.alpha}, {"detrend_mode", to_string(r.detrend_mode)}};
    if (r.trend_decimals) config["trend_decimals"] = *r.trend_decimals;

    j = json{{"schema_version", r.schema_version}, {"config", config}, {"n", r.n}};
    if (r.pot) {
        j["pot"] = {{"threshold", r.pot->spec.threshold},
                    {"comparison", to_string(r.pot->spec.comparison)},
                    {"input_n", r.pot->input_n},
                    {"kept_n", r.pot->kept_n}};
    }
    j["summary_raw"] = r.summary_raw;
    put(j, skipped, "summary_detrended", r.summary_detrended);
    put(j, skipped, "trend", r.trend);
    put(j, skipped, "mann_kendall", r.mann_kendall);

    for (const auto& [name, models] :
         {std::pair{"ar_raw", &r.ar_raw}, std::pair{"ar_detrended", &r.ar_detrended}}) {
        json arr = json::array();
        for (std::size_t i = 0; i < models->size(); ++i) {
            const auto& s = (*models)[i];
            if (s.present()) {
                arr.push_back(*s.value);
            } else {
                skipped[fmt::format("{}.p{}", name, i + 1)] = s.skipped_reason;
            }
        }
        j[name] = arr;
    }

    json lag1 = json::object();
    put(lag1, skipped, "lag1_raw", r.lag1_raw);
    put(lag1, skipped, "lag1_detrended", r.lag1_detrended);
    j["lag1_correlation"] = lag1;

    json order = json::object();
    put(order, skipped, "order_raw", r.order_raw);
    put(order, skipped, "order_detrended", r.order_detrended);
    j["order_selection"] = order;

    put(j, skipped, "residuals", r.residuals);
    j["skipped"] = skipped;
}

void from_json(const json& j, PipelineReport& r) {
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kSchemaVersion) {
        throw DataError("unsupported schema_version " + std::to_string(r.schema_version));
    }
    const auto& config = j.at("config");
    r.max_lag = config.at("max_lag").get<std::size_t>();
    r.alpha = num(config, "alpha");
    r.detrend_mode = detrend_mode_from(config.at("detrend_mode").get<std::string>());
    r.trend_decimals.reset();
    if (config.contains("trend_decimals")) r.trend_decimals = config.at("trend_decimals").get<int>();
    r.n = j.at("n").get<std::size_t>();
    r.pot.reset();
    if (j.contains("pot")) {
        const auto& p = j.at("pot");
        r.pot = PotInfo{{num(p, "threshold"), comparison_from(p.at("comparison").get<std::string>())},
                        p.at("input_n").get<std::size_t>(),
                        p.at("kept_n").get<std::size_t>()};
    }
    r.summary_raw = j.at("summary_raw").get<SummaryStats>();
    r.summary_detrended = take<SummaryStats>(j, "summary_detrended");
    r.trend = take<TrendLine>(j, "trend");
    r.mann_kendall = take<MKResult>(j, "mann_kendall");

    const auto& skipped = j.at("skipped");
    for (const auto& [name, models] :
         {std::pair{"ar_raw", &r.ar_raw}, std::pair{"ar_detrended", &r.ar_detrended}}) {
        models->assign(r.max_lag, {});
        for (const auto& m : j.at(name)) {
            const auto p = m.at("p").get<std::size_t>();
            if (p < 1 || p > r.max_lag) throw DataError(fmt::format("{} has p = {} out of range", name, p));
            (*models)[p - 1].value = m.get<ARModel>();
        }
        for (std::size_t i = 0; i < r.max_lag; ++i) {
            if (!(*models)[i].present()) {
                (*models)[i].skipped_reason =
                    skipped.value(fmt::format("{}.p{}", name, i + 1), std::string("missing"));
            }
        }
    }

    const auto& lag1 = j.at("lag1_correlation");
    r.lag1_raw = {};
    r.lag1_detrended = {};
    if (lag1.contains("lag1_raw")) r.lag1_raw.value = num(lag1, "lag1_raw");
    else r.lag1_raw.skipped_reason = skipped.value("lag1_raw", std::string("missing"));
    if (lag1.contains("lag1_detrended")) r.lag1_detrended.value = num(lag1, "lag1_detrended");
    else r.lag1_detrended.skipped_reason = skipped.value("lag1_detrended", std::string("missing"));

    const auto& order = j.at("order_selection");
    r.order_raw = {};
    r.order_detrended = {};
    if (order.contains("order_raw")) r.order_raw.value = order.at("order_raw").get<OrderSelectionTrace>();
    else r.order_raw.skipped_reason = skipped.value("order_raw", std::string("missing"));
    if (order.contains("order_detrended")) {
        r.order_detrended.value = order.at("order_detrended").get<OrderSelectionTrace>();
    } else {
        r.order_detrended.skipped_reason = skipped.value("order_detrended", std::string("missing"));
    }

    r.residuals = take<ResidualReport>(j, "residuals");
}

std::string to_json_text(const PipelineReport& report) { return json(report).dump(2) + "\n"; }

PipelineReport pipeline_report_from_json(const std::string& text) {
    try {
        return json::parse(text).get<PipelineReport>();
    } catch (const json::exception& e) {
        throw DataError(std::string("invalid report JSON: ") + e.what());
    }
}

std::string render_text(const RegressionReport& r, const std::string& title) {
    std::string out = fmt::format("SUMMARY OUTPUT: {}\n\n", title);
    out += "Regression statistics\n";
    out += fmt::format("  {:<20}{}\n", "Multiple R", fmt_num(r.r_multiple));
    out += fmt::format("  {:<20}{}\n", "R Square", fmt_num(r.r_squared));
    out += fmt::format("  {:<20}{}\n", "Adjusted R Square", fmt_num(r.r_squared_adj));
    out += fmt::format("  {:<20}{}\n", "Standard Error", fmt_num(r.std_error_regression));
    out += fmt::format("  {:<20}{}\n\n", "Observations", r.n);

    const auto& a = r.anova;
    out += "ANOVA\n";
    out += fmt::format("  {:<12}{:>4}  {:>18}  {:>18}  {:>18}  {:>18}\n", "", "df", "SS", "MS", "F",
                       "Significance F");
    out += fmt::format("  {:<12}{:>4}  {:>18}  {:>18}  {:>18}  {:>18}\n", "Regression", a.df_regression,
                       fmt_num(a.regression_ss), fmt_num(a.regression_ms), fmt_num(a.f_stat),
                       fmt_num(a.significance_f));
    out += fmt::format("  {:<12}{:>4}  {:>18}  {:>18}\n", "Residual", a.df_residual,
                       fmt_num(a.residual_ss), fmt_num(a.residual_ms));
    out += fmt::format("  {:<12}{:>4}  {:>18}\n\n", "Total", a.df_regression + a.df_residual,
                       fmt_num(a.total_ss));

    out += fmt::format("  {:<12}{:>18}  {:>18}  {:>18}  {:>18}  {:>18}  {:>18}\n", "", "Coefficients",
                       "Standard Error", "t Stat", "P-value", "Lower 95%", "Upper 95%");
    for (std::size_t i = 0; i < r.coefficients.size(); ++i) {
        const auto& c = r.coefficients[i];
        const std::string name = i == 0 ? "Intercept" : fmt::format("X{}", i);
        out += fmt::format("  {:<12}{:>18}  {:>18}  {:>18}  {:>18}  {:>18}  {:>18}\n", name,
                           fmt_num(c.estimate), fmt_num(c.std_error), fmt_num(c.t_stat),
                           fmt_num(c.p_value), fmt_num(c.ci_lower_95), fmt_num(c.ci_upper_95));
    }
    return out;
}

std::string render_text(const ResidualReport& r) {
    std::string out = "RESIDUAL OUTPUT\n";
    out += fmt::format("  {:>11}  {:>18}  {:>18}  {:>18}  {:>18}  {:>18}  {}\n", "Observation",
                       "Predicted Y", "Residual", "Std Residual", "Percentile", "Y", "");
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const auto& row = r.rows[i];
        out += fmt::format("  {:>11}  {:>18}  {:>18}  {:>18}  {:>18}  {:>18}  {}\n", row.observation_id,
                           fmt_num(row.y_predicted), fmt_num(row.residual), fmt_num(row.standardized),
                           fmt_num(row.percentile), fmt_num(r.sorted_y[i]), row.outlier ? "OUTLIER" : "");
    }
    out += fmt::format("  scale sqrt(SSE/(n-1)) = {}, regression standard error = {}\n",
                       fmt_num(r.scale), fmt_num(r.std_error_regression));
    if (r.degenerate) {
        out += "  residual scale is 0: no standardization, no outliers\n";
    } else {
        const auto ids = r.outlier_ids();
        out += fmt::format("  outliers (|standardized| > {}): {}\n", fmt_num(r.outlier_threshold),
                           ids.empty() ? std::string("none") : fmt::format("{}", fmt::join(ids, ", ")));
    }
    return out;
}

std::string render_text(const PipelineReport& r) {
    std::string out;
    auto skipped_line = [](const std::string& what, const std::string& reason) {
        return fmt::format("{}: skipped ({})\n\n", what, reason);
    };
    auto summary = [](const SummaryStats& s) {
        return fmt::format("n {}  mean {}  std dev {}  variance {}  min {}  max {}\n\n", s.n,
                           fmt_num(s.mean), fmt_num(s.std_dev), fmt_num(s.variance), fmt_num(s.min),
                           fmt_num(s.max));
    };

    out += fmt::format("Extreme-event analysis (schema {})\n", r.schema_version);
    if (r.pot) {
        out += fmt::format("Peaks over threshold {} ({}): kept {} of {}\n", fmt_num(r.pot->spec.threshold),
                           to_string(r.pot->spec.comparison), r.pot->kept_n, r.pot->input_n);
    }
    out += fmt::format("Observations {}, max lag {}, alpha {}, detrend mode {}\n\n", r.n, r.max_lag,
                       fmt_num(r.alpha), to_string(r.detrend_mode));

    out += "Descriptive statistics (raw)\n" + summary(r.summary_raw);
    out += r.summary_detrended.present()
               ? "Descriptive statistics (detrended)\n" + summary(*r.summary_detrended.value)
               : skipped_line("Descriptive statistics (detrended)", r.summary_detrended.skipped_reason);

    if (r.trend.present()) {
        out += fmt::format("Trend line: y = {} x + {}{}\n\n", fmt_num(r.trend.value->slope),
                           fmt_num(r.trend.value->intercept),
                           r.trend_decimals ? fmt::format(" (rounded to {} decimals)", *r.trend_decimals)
                                            : std::string());
    } else {
        out += skipped_line("Trend line", r.trend.skipped_reason);
    }

    if (r.mann_kendall.present()) {
        const auto& m = *r.mann_kendall.value;
        out += fmt::format("Mann-Kendall: S {}  var(S) {}  Z {}  p {}{}  -> {} at alpha {}\n\n", m.s,
                           fmt_num(m.var_s), fmt_num(m.z), fmt_num(m.p_value), m.exact ? " (exact)" : "",
                           to_string(m.decision), fmt_num(m.alpha));
    } else {
        out += skipped_line("Mann-Kendall", r.mann_kendall.skipped_reason);
    }

    for (const auto& [label, models] :
         {std::pair{"raw", &r.ar_raw}, std::pair{"detrended", &r.ar_detrended}}) {
        for (std::size_t i = 0; i < models->size(); ++i) {
            const auto title = fmt::format("AR({}) {}", i + 1, label);
            const auto& s = (*models)[i];
            out += s.present() ? render_text(s.value->report, title) + "\n"
                               : skipped_line(title, s.skipped_reason);
        }
    }

    out += "Lag-1 correlation\n";
    out += r.lag1_raw.present() ? fmt::format("  raw        {}\n", fmt_num(*r.lag1_raw.value))
                                : fmt::format("  raw        skipped ({})\n", r.lag1_raw.skipped_reason);
    out += r.lag1_detrended.present()
               ? fmt::format("  detrended  {}\n\n", fmt_num(*r.lag1_detrended.value))
               : fmt::format("  detrended  skipped ({})\n\n", r.lag1_detrended.skipped_reason);

    for (const auto& [label, trace] :
         {std::pair{"raw", &r.order_raw}, std::pair{"detrended", &r.order_detrended}}) {
        const auto title = fmt::format("Order selection ({})", label);
        if (!trace->present()) {
            out += skipped_line(title, trace->skipped_reason);
            continue;
        }
        out += title + "\n";
        for (const auto& s : trace->value->steps) {
            out += fmt::format("  p {}  b_p {}  S(b_p) {}  Z {}  Z_alpha {}  {}\n", s.p, fmt_num(s.coefficient),
                               fmt_num(s.std_error), fmt_num(s.z), fmt_num(s.z_alpha), to_string(s.decision));
        }
        out += fmt::format("  selected order {}\n\n", trace->value->selected_order);
    }

    out += r.residuals.present() ? "Residuals of raw AR(1)\n" + render_text(*r.residuals.value)
                                 : skipped_line("Residuals of raw AR(1)", r.residuals.skipped_reason);
    return out;
}

std::string plot_csv(const std::vector<PlotPoint>& points) {
    std::string out = "x,y\n";
    for (const auto& p : points) out += fmt::format("{},{}\n", p.x, p.y);
    return out;
}

}  // namespace extremes
