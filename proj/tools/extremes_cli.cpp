// Command-line front end for the extreme-event analysis library.
//
// Exit codes: 0 success, 1 usage, 2 data, 3 numerical.

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "extremes/autoreg.hpp"
#include "extremes/csv.hpp"
#include "extremes/error.hpp"
#include "extremes/evt_risk.hpp"
#include "extremes/peaks.hpp"
#include "extremes/pipeline.hpp"
#include "extremes/report_io.hpp"
#include "extremes/residuals.hpp"
#include "extremes/trend.hpp"

namespace {

using namespace extremes;
using nlohmann::json;

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

struct InputOptions {
    std::string path;
    bool decimal_comma = false;
    std::string format = "text";

    void add_to(CLI::App& cmd) {
        cmd.add_option("-i,--input", path, "CSV with header `month,value`")->required();
        cmd.add_flag("--decimal-comma", decimal_comma, "values use a decimal comma (195,2)");
        cmd.add_option("--format", format, "output format")
            ->check(CLI::IsMember({"text", "json"}));
    }

    [[nodiscard]] TimeSeries load() const {
        return io::read_series_file(path, decimal_comma ? io::DecimalConvention::comma
                                                        : io::DecimalConvention::point);
    }
    [[nodiscard]] bool json_out() const { return format == "json"; }
};

struct DetrendOptions {
    std::string mode = "percent";
    std::optional<int> decimals;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--detrend-mode", mode, "how the trend is removed")
            ->check(CLI::IsMember({"percent", "difference"}));
        cmd.add_option("--trend-decimals", decimals, "round trend coefficients before detrending");
    }

    [[nodiscard]] DetrendMode detrend_mode() const {
        return mode == "difference" ? DetrendMode::difference : DetrendMode::percent;
    }
    [[nodiscard]] TimeSeries apply(const TimeSeries& series) const {
        auto line = fit_trend(series);
        if (decimals) line = line.rounded(*decimals);
        return detrend(series, line, detrend_mode());
    }
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << content;
}

void write_plot_data(const std::string& prefix, const ResidualReport& report) {
    const auto plots = plot_data(report);
    write_file(prefix + "_residuals.csv", plot_csv(plots.residual_plot));
    write_file(prefix + "_probability.csv", plot_csv(plots.probability_plot));
}

void print_series_csv(const TimeSeries& s) {
    std::cout << "month,value\n";
    for (const auto& o : s.observations()) std::cout << fmt::format("{},{}\n", o.index, o.value);
}

json series_json(const TimeSeries& s) {
    json arr = json::array();
    for (const auto& o : s.observations()) arr.push_back({{"month", o.index}, {"value", o.value}});
    return arr;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Extreme-event time-series analysis: peaks, trend, autoregression, residuals, risk"};
    app.require_subcommand(1);

    // summarize
    InputOptions sum_in;
    auto* summarize_cmd = app.add_subcommand("summarize", "descriptive statistics of the values");
    sum_in.add_to(*summarize_cmd);

    // peaks
    InputOptions peaks_in;
    std::optional<double> peaks_threshold;
    bool peaks_inclusive = false;
    std::string peaks_mode = "compact";
    std::optional<std::size_t> peaks_block;
    auto* peaks_cmd = app.add_subcommand("peaks", "peaks over threshold or block maxima");
    peaks_in.add_to(*peaks_cmd);
    auto* thr_opt = peaks_cmd->add_option("--threshold", peaks_threshold, "POT threshold");
    peaks_cmd->add_flag("--at-or-above", peaks_inclusive, "keep values equal to the threshold");
    peaks_cmd->add_option("--mode", peaks_mode, "POT output form")
        ->check(CLI::IsMember({"compact", "zerofill"}));
    auto* block_opt = peaks_cmd->add_option("--block-size", peaks_block, "block maxima block size");
    thr_opt->excludes(block_opt);

    // trend
    InputOptions trend_in;
    DetrendOptions trend_dt;
    bool trend_mk = false;
    bool trend_emit = false;
    double trend_alpha = 0.05;
    auto* trend_cmd = app.add_subcommand("trend", "linear trend, detrending and Mann-Kendall test");
    trend_in.add_to(*trend_cmd);
    trend_dt.add_to(*trend_cmd);
    trend_cmd->add_flag("--mann-kendall", trend_mk, "run the Mann-Kendall test");
    trend_cmd->add_option("--alpha", trend_alpha, "significance level");
    trend_cmd->add_flag("--emit-detrended", trend_emit, "print the detrended series");

    // ar
    InputOptions ar_in;
    DetrendOptions ar_dt;
    std::size_t ar_max_lag = 3;
    double ar_alpha = 0.05;
    bool ar_detrend = false;
    auto* ar_cmd = app.add_subcommand("ar", "AR(1..max-lag) fits and order selection");
    ar_in.add_to(*ar_cmd);
    ar_dt.add_to(*ar_cmd);
    ar_cmd->add_option("--max-lag", ar_max_lag, "highest AR order")->check(CLI::PositiveNumber);
    ar_cmd->add_option("--alpha", ar_alpha, "significance level");
    ar_cmd->add_flag("--detrend", ar_detrend, "fit on the detrended series");

    // residuals
    InputOptions res_in;
    DetrendOptions res_dt;
    std::size_t res_lag = 1;
    bool res_detrend = false;
    double res_threshold = default_outlier_threshold;
    std::string res_plot;
    auto* res_cmd = app.add_subcommand("residuals", "residual analysis of an AR fit");
    res_in.add_to(*res_cmd);
    res_dt.add_to(*res_cmd);
    res_cmd->add_option("--lag", res_lag, "AR order")->check(CLI::PositiveNumber);
    res_cmd->add_flag("--detrend", res_detrend, "fit on the detrended series");
    res_cmd->add_option("--outlier-threshold", res_threshold, "|standardized residual| limit");
    res_cmd->add_option("--plot-data", res_plot, "write PREFIX_residuals.csv and PREFIX_probability.csv");

    // gev-pdf
    double gev_mu = 0.0;
    double gev_sigma = 1.0;
    double gev_xi = 0.0;
    std::string gev_x;
    auto* gev_cmd = app.add_subcommand("gev-pdf", "generalized extreme value density");
    gev_cmd->add_option("--mu", gev_mu, "location");
    gev_cmd->add_option("--sigma", gev_sigma, "scale (> 0)");
    gev_cmd->add_option("--xi", gev_xi, "shape");
    gev_cmd->add_option("-x,--x", gev_x, "comma-separated evaluation points")->required();

    // risk-curve
    std::string risk_hazard;
    std::string risk_vuln;
    std::string risk_loss;
    std::string risk_loss_file;
    std::string risk_format = "text";
    auto* risk_cmd = app.add_subcommand("risk-curve", "annual loss-exceedance frequency");
    risk_cmd->add_option("--hazard", risk_hazard, "CSV with header `s,G`")->required();
    risk_cmd->add_option("--vulnerability", risk_vuln, "CSV with header `s,mean_loss,cov`")->required();
    auto* loss_opt = risk_cmd->add_option("--loss", risk_loss, "comma-separated losses");
    auto* loss_file_opt = risk_cmd->add_option("--loss-file", risk_loss_file, "CSV with header `x`");
    loss_opt->excludes(loss_file_opt);
    risk_cmd->add_option("--format", risk_format, "output format")->check(CLI::IsMember({"text", "json"}));

    // analyze
    InputOptions an_in;
    DetrendOptions an_dt;
    AnalysisConfig an_cfg;
    std::optional<double> an_threshold;
    bool an_inclusive = false;
    bool an_no_detrend = false;
    std::string an_plot;
    auto* an_cmd = app.add_subcommand("analyze", "full pipeline");
    an_in.add_to(*an_cmd);
    an_dt.add_to(*an_cmd);
    an_cmd->add_option("--threshold", an_threshold, "keep only peaks over this threshold first");
    an_cmd->add_flag("--at-or-above", an_inclusive, "keep values equal to the threshold");
    an_cmd->add_option("--max-lag", an_cfg.max_lag, "highest AR order")->check(CLI::PositiveNumber);
    an_cmd->add_option("--alpha", an_cfg.alpha, "significance level");
    an_cmd->add_flag("--no-detrend", an_no_detrend, "skip the detrended analyses");
    an_cmd->add_option("--outlier-threshold", an_cfg.outlier_threshold, "|standardized residual| limit");
    an_cmd->add_option("--plot-data", an_plot, "write PREFIX_residuals.csv and PREFIX_probability.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*summarize_cmd) {
            const auto s = summarize(sum_in.load());
            if (sum_in.json_out()) {
                std::cout << json(s).dump(2) << "\n";
            } else {
                std::cout << fmt::format("n {}\nmean {:.10g}\nvariance {:.10g}\nstd_dev {:.10g}\nmin {:.10g}\nmax {:.10g}\n",
                                         s.n, s.mean, s.variance, s.std_dev, s.min, s.max);
            }
        } else if (*peaks_cmd) {
            const auto series = peaks_in.load();
            EventSeries events;
            if (peaks_block) {
                events = block_maxima(series, *peaks_block);
            } else if (peaks_threshold) {
                const ThresholdSpec spec{*peaks_threshold, peaks_inclusive ? Comparison::at_or_above
                                                                           : Comparison::strictly_above};
                events = peaks_mode == "zerofill" ? pot_zerofill(series, spec) : pot_compact(series, spec);
            } else {
                throw UsageError("peaks needs --threshold or --block-size");
            }
            if (peaks_in.json_out()) {
                std::cout << json{{"events", series_json(events.series)}}.dump(2) << "\n";
            } else {
                print_series_csv(events.series);
            }
        } else if (*trend_cmd) {
            const auto series = trend_in.load();
            auto line = fit_trend(series);
            if (trend_dt.decimals) line = line.rounded(*trend_dt.decimals);
            json out{{"trend", line}};
            if (trend_mk) out["mann_kendall"] = mann_kendall(series, trend_alpha);
            const auto detrended = detrend(series, line, trend_dt.detrend_mode());
            if (trend_emit) out["detrended"] = series_json(detrended);
            if (trend_in.json_out()) {
                std::cout << out.dump(2) << "\n";
            } else {
                std::cout << fmt::format("y = {:.10g} x + {:.10g}\n", line.slope, line.intercept);
                if (trend_mk) {
                    const auto m = out["mann_kendall"].get<MKResult>();
                    std::cout << fmt::format("Mann-Kendall S {} var(S) {:.10g} Z {:.10g} p {:.10g} -> {}\n", m.s,
                                             m.var_s, m.z, m.p_value, out["mann_kendall"]["decision"].get<std::string>());
                }
                if (trend_emit) print_series_csv(detrended);
            }
        } else if (*ar_cmd) {
            auto series = ar_in.load();
            if (ar_detrend) series = ar_dt.apply(series);
            const auto kind = ar_detrend ? SeriesKind::detrended : SeriesKind::raw;
            json models = json::array();
            std::string text;
            for (std::size_t p = 1; p <= ar_max_lag; ++p) {
                const auto m = fit_ar(series, p, kind);
                models.push_back(m);
                text += render_text(m.report, fmt::format("AR({})", p)) + "\n";
            }
            const auto trace = select_order(series, ar_max_lag, ar_alpha);
            if (ar_in.json_out()) {
                std::cout << json{{"models", models}, {"order_selection", trace}}.dump(2) << "\n";
            } else {
                std::cout << text << "Order selection\n";
                for (const auto& s : trace.steps) {
                    std::cout << fmt::format("  p {}  Z {:.10g}  Z_alpha {:.10g}  {}\n", s.p, s.z, s.z_alpha,
                                             s.decision == OrderDecision::keep ? "keep" : "drop");
                }
                std::cout << fmt::format("  selected order {}\n", trace.selected_order);
            }
        } else if (*res_cmd) {
            auto series = res_in.load();
            if (res_detrend) series = res_dt.apply(series);
            const auto model = fit_ar(series, res_lag, res_detrend ? SeriesKind::detrended : SeriesKind::raw);
            const auto report = residual_analysis(model, series, res_threshold);
            if (!res_plot.empty()) write_plot_data(res_plot, report);
            std::cout << (res_in.json_out() ? json(report).dump(2) + "\n" : render_text(report));
        } else if (*gev_cmd) {
            const GevParams params{gev_mu, gev_sigma, gev_xi};
            std::cout << "x,density\n";
            for (double x : io::parse_number_list(gev_x)) {
                std::cout << fmt::format("{},{}\n", x, gev_pdf(x, params));
            }
        } else if (*risk_cmd) {
            const auto hazard = io::read_hazard_file(risk_hazard);
            const auto vuln = io::read_vulnerability_file(risk_vuln);
            std::vector<double> grid;
            if (!risk_loss_file.empty()) {
                grid = io::read_loss_grid_file(risk_loss_file);
            } else if (!risk_loss.empty()) {
                grid = io::parse_number_list(risk_loss);
            } else {
                throw UsageError("risk-curve needs --loss or --loss-file");
            }
            const auto curve = risk_curve(grid, hazard, vuln);
            if (risk_format == "json") {
                std::cout << json{{"loss", curve.loss}, {"frequency", curve.frequency}}.dump(2) << "\n";
            } else {
                std::cout << "x,R\n";
                for (std::size_t i = 0; i < curve.loss.size(); ++i) {
                    std::cout << fmt::format("{},{}\n", curve.loss[i], curve.frequency[i]);
                }
            }
        } else if (*an_cmd) {
            an_cfg.input_path = an_in.path;
            an_cfg.decimal = an_in.decimal_comma ? io::DecimalConvention::comma : io::DecimalConvention::point;
            if (an_threshold) {
                an_cfg.threshold = ThresholdSpec{*an_threshold, an_inclusive ? Comparison::at_or_above
                                                                             : Comparison::strictly_above};
            }
            an_cfg.detrend = !an_no_detrend;
            an_cfg.detrend_mode = an_dt.detrend_mode();
            an_cfg.trend_decimals = an_dt.decimals;
            const auto report = run_pipeline(an_in.load(), an_cfg);
            if (!an_plot.empty() && report.residuals.present()) write_plot_data(an_plot, *report.residuals.value);
            std::cout << (an_in.json_out() ? to_json_text(report) : render_text(report));
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kData;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kNumerical;
    }
    return kOk;
}
