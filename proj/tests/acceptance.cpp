// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
//
// Usage: acceptance [path-to-extremes-cli]

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "extremes/autoreg.hpp"
#include "extremes/distributions.hpp"
#include "extremes/evt_risk.hpp"
#include "extremes/peaks.hpp"
#include "extremes/pipeline.hpp"
#include "extremes/report_io.hpp"
#include "extremes/residuals.hpp"
#include "extremes/trend.hpp"
#include "ols_properties.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace extremes;

namespace {

// Collects failed comparisons for one criterion.
class Checker {
public:
    void rel(const std::string& what, double actual, double expected, double tol) {
        const double err = std::fabs(actual - expected) / std::fabs(expected);
        worst_ = std::max(worst_, err);
        if (!(err <= tol)) fail(what + " = " + fmt(actual) + ", expected " + fmt(expected));
    }
    void abs(const std::string& what, double actual, double expected, double tol) {
        if (!(std::fabs(actual - expected) <= tol)) {
            fail(what + " = " + fmt(actual) + ", expected " + fmt(expected) + " +/- " + fmt(tol));
        }
    }
    void that(const std::string& what, bool ok) {
        if (!ok) fail(what);
    }
    void fail(const std::string& message) {
        if (failures_.size() < 3) failures_.push_back(message);
        ++count_;
    }
    void note(const std::string& text) { notes_ = text; }

    [[nodiscard]] bool ok() const { return count_ == 0; }
    [[nodiscard]] std::string detail() const {
        if (ok()) return notes_.empty() ? "worst rel err " + fmt(worst_) : notes_;
        std::string out = std::to_string(count_) + " failure(s): ";
        for (std::size_t i = 0; i < failures_.size(); ++i) out += (i ? "; " : "") + failures_[i];
        return out;
    }

    static std::string fmt(double v) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.10g", v);
        return buf;
    }

private:
    std::vector<std::string> failures_;
    std::size_t count_ = 0;
    double worst_ = 0.0;
    std::string notes_;
};

// Median wall time of `runs` calls, in milliseconds.
double median_ms(const std::function<void()>& body, int runs) {
    std::vector<double> t;
    for (int i = 0; i < runs; ++i) {
        const auto start = std::chrono::steady_clock::now();
        body();
        t.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
    }
    std::nth_element(t.begin(), t.begin() + runs / 2, t.end());
    return t[static_cast<std::size_t>(runs / 2)];
}

struct PrintedCoefficient {
    double estimate, std_error, t_stat, p_value;
};

void compare_report(Checker& c, const std::string& label, const RegressionReport& r,
                    const std::vector<PrintedCoefficient>& printed, double r_squared, double tol) {
    if (r.coefficients.size() != printed.size()) {
        c.fail(label + ": wrong coefficient count");
        return;
    }
    for (std::size_t j = 0; j < printed.size(); ++j) {
        const auto name = label + " b" + std::to_string(j);
        c.rel(name + " estimate", r.coefficients[j].estimate, printed[j].estimate, tol);
        c.rel(name + " std error", r.coefficients[j].std_error, printed[j].std_error, tol);
        c.rel(name + " t", r.coefficients[j].t_stat, printed[j].t_stat, tol);
        c.rel(name + " p", r.coefficients[j].p_value, printed[j].p_value, tol);
    }
    c.rel(label + " R^2", r.r_squared, r_squared, tol);
}

TimeSeries detrended_events() {
    const auto s = testing::precip_events();
    return detrend(s, fit_trend(s).rounded(2), DetrendMode::percent);
}

Checker pot_semantics() {
    Checker c;
    const auto v = testing::threshold_example_values();
    const auto s = TimeSeries::from_values(v);
    const ThresholdSpec spec{100.0, Comparison::strictly_above};

    const std::vector<Observation> tab_a{{1, 200}, {4, 120}, {6, 110}, {7, 180}, {9, 190}, {10, 110}, {12, 110}};
    const std::vector<double> tab_b{200, 0, 0, 120, 0, 110, 180, 0, 190, 110, 0, 110};
    const auto compact = pot_compact(s, spec);
    c.that("compact form differs from the kept-events table", compact.series.observations() == tab_a);
    const auto zero = pot_zerofill(s, spec);
    c.that("zero-filled form differs from the table", zero.series.values() == tab_b);
    std::vector<std::int64_t> months(12);
    for (std::size_t i = 0; i < 12; ++i) months[i] = static_cast<std::int64_t>(i + 1);
    c.that("zero-filled form does not cover months 1..12", zero.series.indices() == months);
    // The dash table marks exactly the dropped months.
    for (std::size_t i = 0; i < v.size(); ++i) {
        const bool kept = std::any_of(tab_a.begin(), tab_a.end(), [&](const Observation& o) {
            return o.index == static_cast<std::int64_t>(i + 1);
        });
        c.that("month " + std::to_string(i + 1) + " kept/dropped mismatch", kept == spec.passes(v[i]));
    }
    const double ms = median_ms([&] {
        (void)pot_compact(s, spec);
        (void)pot_zerofill(s, spec);
    }, 101);
    c.that("runtime " + Checker::fmt(ms) + " ms >= 1 ms", ms < 1.0);
    c.note("7 kept, 12 zero-filled; " + Checker::fmt(ms) + " ms");
    return c;
}

Checker raw_ar1() {
    Checker c;
    const auto s = testing::precip_events();
    ARModel m;
    const double ms = median_ms([&] { m = fit_ar(s, 1); }, 21);
    const auto& r = m.report;
    const double tol = 5e-3;
    c.rel("intercept", r.coefficients[0].estimate, 267.592408, tol);
    c.rel("slope", r.coefficients[1].estimate, 0.41949996, tol);
    c.rel("R^2", r.r_squared, 0.10760973, tol);
    c.rel("std error", r.std_error_regression, 262.491897, tol);
    c.rel("F", r.anova.f_stat, 3.376406518, tol);
    c.rel("significance F", r.anova.significance_f, 0.07677, tol);
    c.rel("slope lower 95%", r.coefficients[1].ci_lower_95, -0.04815, tol);
    c.rel("slope upper 95%", r.coefficients[1].ci_upper_95, 0.8871498, tol);
    c.that("runtime " + Checker::fmt(ms) + " ms >= 10 ms", ms < 10.0);
    return c;
}

Checker raw_ar23() {
    Checker c;
    const auto s = testing::precip_events();
    compare_report(c, "AR(2)", fit_ar(s, 2).report,
                   {{244.810699, 125.7253, 1.94718708, 0.062389478},
                    {0.40025971, 0.256212, 1.5622227, 0.130326579},
                    {0.07408742, 0.253488, 0.29227157, 0.772398608}},
                   0.11091867, 1e-2);
    compare_report(c, "AR(3)", fit_ar(s, 3).report,
                   {{293.363292, 146.471, 2.00287647, 0.056609992},
                    {0.40810533, 0.263935, 1.54623378, 0.135133901},
                    {0.10155194, 0.280089, 0.36257076, 0.720098983},
                    {-0.1493143, 0.261725, -0.5705011, 0.573640953}},
                   0.12210307, 1e-2);
    return c;
}

Checker detrended_ar() {
    Checker c;
    const auto d = detrended_events();
    compare_report(c, "AR(1)", fit_ar(d, 1).report,
                   {{1.382648743, 9.543368813, 0.144880573, 0.885843027},
                    {0.161812235, 0.203407989, 0.795505797, 0.433011776}},
                   0.022101535, 5e-2);
    compare_report(c, "AR(2)", fit_ar(d, 2).report,
                   {{-1.401310389, 9.630257288, -0.14551121, 0.885429498},
                    {0.163426393, 0.205573011, 0.794979805, 0.433822783},
                    {-0.013931734, 0.206107918, -0.067594365, 0.946625678}},
                   0.024012602, 5e-2);
    compare_report(c, "AR(3)", fit_ar(d, 3).report,
                   {{-2.141059352, 9.783612282, -0.218841394, 0.828623951},
                    {0.152825569, 0.216790797, 0.704944908, 0.487630083},
                    {0.048112684, 0.208573612, 0.230674838, 0.81952248},
                    {-0.316125243, 0.20466228, -1.544618984, 0.135523417}},
                   0.107093155, 5e-2);
    return c;
}

Checker lag_correlations() {
    Checker c;
    const auto s = testing::precip_events();
    const auto d = detrended_events();
    const double raw = lag_correlation(s, 1);
    const double det = lag_correlation(d, 1);
    c.rel("raw lag-1", raw, 0.32803921, 1e-2);
    c.rel("detrended lag-1", det, 0.148665849, 1e-2);
    c.abs("|raw| vs AR(1) multiple R", std::fabs(raw), fit_ar(s, 1).report.r_multiple, 1e-12);
    c.abs("|detrended| vs AR(1) multiple R", std::fabs(det), fit_ar(d, 1).report.r_multiple, 1e-12);
    return c;
}

Checker residual_golden() {
    Checker c;
    const auto s = testing::precip_events();
    const auto r = residual_analysis(fit_ar(s, 1), s);
    if (r.rows.size() != 30) {
        c.fail("expected 30 rows");
        return c;
    }
    struct Row {
        std::size_t at;
        double y_hat, e, standardized, percentile, sorted_y;
    };
    for (const Row& p : {Row{0, 351.4924, 44.50760128, 0.17255926, 1.666666667, 130},
                         Row{29, 477.34239, 877.6576147, 3.402743454, 98.333333333, 1355}}) {
        const auto& row = r.rows[p.at];
        const auto label = "row " + std::to_string(p.at + 1) + " ";
        c.rel(label + "predicted", row.y_predicted, p.y_hat, 5e-3);
        c.rel(label + "residual", row.residual, p.e, 5e-3);
        c.rel(label + "standardized", row.standardized, p.standardized, 5e-3);
        c.rel(label + "percentile", row.percentile, p.percentile, 5e-3);
        c.rel(label + "sorted Y", r.sorted_y[p.at], p.sorted_y, 5e-3);
    }
    const auto ids = r.outlier_ids();
    c.that("outliers are not exactly {30}", ids == std::vector<std::int64_t>{30});
    return c;
}

Checker order_selection() {
    Checker c;
    const auto s = testing::precip_events();
    const auto strict = select_order(s, 3, 0.05);
    const auto loose = select_order(s, 3, 0.10);
    c.that("alpha 0.05 selects " + std::to_string(strict.selected_order) + ", expected 0",
           strict.selected_order == 0);
    c.that("alpha 0.10 selects " + std::to_string(loose.selected_order) + ", expected 1",
           loose.selected_order == 1);
    const std::array<double, 3> printed{-0.5705011, 0.29227157, 1.83750007};
    if (strict.steps.size() != 3) {
        c.fail("trace at alpha 0.05 has " + std::to_string(strict.steps.size()) + " steps");
        return c;
    }
    for (std::size_t i = 0; i < 3; ++i) {
        c.rel("Z at p=" + std::to_string(strict.steps[i].p), strict.steps[i].z, printed[i], 1e-2);
    }
    return c;
}

Checker ols_properties() {
    Checker c;
    std::mt19937_64 rng(20240613);
    for (int i = 0; i < 200; ++i) {
        for (const auto& f : testing::check_ols_properties(testing::random_ols_problem(rng), 1e-8)) {
            c.fail("instance " + std::to_string(i) + ": " + f.what + " off by " + Checker::fmt(f.value));
        }
    }
    c.note("200 instances");
    return c;
}

Checker distribution_kernels() {
    Checker c;
    double worst = 0.0;
    for (int df = 1; df <= 60; df += (df < 10 ? 1 : 5)) {
        for (double t : {0.1, 0.5, 1.0, 1.7, 2.0, 2.6, 3.5, 5.0, 8.0}) {
            const double err = std::fabs(dist::student_t_two_sided_p(t, df) - testing::t_two_sided_oracle(t, df));
            worst = std::max(worst, err);
            c.that("t tail df " + std::to_string(df) + " t " + Checker::fmt(t) + " off by " + Checker::fmt(err),
                   err < 1e-8);
        }
    }
    for (int d1 : {1, 2, 3, 5, 8}) {
        for (int d2 : {2, 5, 10, 24, 28, 60}) {
            for (double f : {0.2, 0.8, 1.112687067, 2.0, 3.376406518, 6.0}) {
                const double err = std::fabs(dist::f_upper_tail(f, d1, d2) - testing::f_upper_oracle(f, d1, d2));
                worst = std::max(worst, err);
                c.that("F tail (" + std::to_string(d1) + "," + std::to_string(d2) + ") at " + Checker::fmt(f) +
                           " off by " + Checker::fmt(err),
                       err < 1e-8);
            }
        }
    }
    c.abs("t p-value (1.83750007, 28)", dist::student_t_two_sided_p(1.83750007, 28), 0.0767705, 5e-8);
    c.abs("F significance (1.112687067; 3, 24)", dist::f_upper_tail(1.112687067, 3, 24), 0.363433, 5e-7);
    c.note("max oracle gap " + Checker::fmt(worst));
    return c;
}

Checker mann_kendall_suite() {
    Checker c;
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<std::size_t> len(4, 8);
    std::normal_distribution<double> z;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        std::vector<double> v(len(rng));
        for (auto& x : v) x = z(rng);
        const auto m = mann_kendall(TimeSeries::from_values(v), 0.05);
        const double p = testing::mk_permutation_p(v.size(), m.s);
        worst = std::max(worst, std::fabs(m.p_value - p));
        c.that("instance " + std::to_string(i) + " S mismatch", m.s == testing::pair_score(v));
        c.abs("instance " + std::to_string(i) + " p", m.p_value, p, 0.02);

        // Strictly increasing transforms leave the ranks, hence the result, unchanged.
        for (const auto& g : std::vector<std::function<double(double)>>{
                 [](double x) { return std::exp(x); },
                 [](double x) { return x * x * x + 5.0; },
                 [](double x) { return 1000.0 * x - 3.0; }}) {
            std::vector<double> w(v.size());
            std::transform(v.begin(), v.end(), w.begin(), g);
            const auto t = mann_kendall(TimeSeries::from_values(w), 0.05);
            c.that("instance " + std::to_string(i) + " not rank invariant",
                   t.s == m.s && t.var_s == m.var_s && t.z == m.z && t.p_value == m.p_value &&
                       t.decision == m.decision);
        }
    }
    c.note("100 instances, max |p - oracle| " + Checker::fmt(worst));
    return c;
}

Checker gev_suite() {
    Checker c;
    boost::math::quadrature::tanh_sinh<double> ts;
    const double inf = std::numeric_limits<double>::infinity();
    for (double xi : {-0.3, 0.0, 0.3}) {
        const GevParams p{1.0, 2.0, xi};
        const double lo = xi > 0 ? p.mu - p.sigma / xi : -inf;
        const double hi = xi < 0 ? p.mu - p.sigma / xi : inf;
        const double total = ts.integrate([&](double x) { return gev_pdf(x, p); }, lo, hi);
        c.abs("integral at xi " + Checker::fmt(xi), total, 1.0, 1e-6);
    }
    for (double x = -3.0; x <= 10.0; x += 0.25) {
        const double g = gev_pdf(x, {0.0, 1.0, 0.0});
        for (double xi : {1e-9, -1e-9, 1e-7, -1e-7}) {
            c.abs("pdf(" + Checker::fmt(x) + ") at xi " + Checker::fmt(xi), gev_pdf(x, {0.0, 1.0, xi}), g, 1e-6);
        }
    }
    return c;
}

Checker risk_suite() {
    Checker c;
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> size(3, 8);
    double worst = 0.0;
    double slowest = 0.0;
    for (int inst = 0; inst < 50; ++inst) {
        const auto n = static_cast<std::size_t>(size(rng));
        std::vector<HazardPoint> hp;
        std::vector<VulnerabilityPoint> vp;
        double s = 0.05 + 0.15 * u(rng);
        double g = 0.1 + 1.9 * u(rng);
        double mean = 0.01 + 0.09 * u(rng);
        for (std::size_t i = 0; i < n; ++i) {
            hp.push_back({s, g});
            vp.push_back(VulnerabilityPoint::make(s, mean, inst % 10 == 0 && i == 1 ? 0.0 : 0.1 + 1.1 * u(rng)));
            s += 0.05 + 0.45 * u(rng);
            g *= u(rng) < 0.1 ? 1.0 : 0.05 + 0.95 * u(rng);
            mean *= 1.0 + 2.0 * u(rng);
        }
        const HazardCurve hazard(hp);
        std::vector<double> grid{0.0};
        for (int k = 0; k < 20; ++k) grid.push_back(1e-4 * std::pow(10.0, 5.0 * u(rng)));
        std::sort(grid.begin(), grid.end());
        grid.push_back(1e9);

        RiskCurve r;
        const double ms = median_ms([&] { r = risk_curve(grid, hazard, vp); }, 5);
        slowest = std::max(slowest, ms);
        const auto label = "instance " + std::to_string(inst);
        c.that(label + " runtime " + Checker::fmt(ms) + " ms", ms < 100.0);

        const double g1 = hp.front().g;
        const double gn = hp.back().g;
        c.abs(label + " R(0)", r.frequency.front(), g1 - gn, 1e-12 * g1);
        c.abs(label + " R(inf)", r.frequency.back(), 0.0, 1e-12 * g1);
        for (std::size_t k = 1; k < grid.size(); ++k) {
            c.that(label + " R increases at x " + Checker::fmt(grid[k]),
                   r.frequency[k] <= r.frequency[k - 1] * (1.0 + 1e-12) + 1e-300);
        }
        for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
            const double oracle = testing::risk_trapezoid_oracle(grid[k], hazard, vp, 100000);
            const double floor = 1e-9 * g1;
            const double err = std::fabs(r.frequency[k] - oracle) / std::max(oracle, floor);
            worst = std::max(worst, err);
            c.that(label + " x " + Checker::fmt(grid[k]) + " rel gap " + Checker::fmt(err), err <= 5e-3);
        }
    }
    c.note("50 instances, max rel gap " + Checker::fmt(worst) + ", slowest " + Checker::fmt(slowest) + " ms");
    return c;
}

std::string run_command(const std::string& command, int& status) {
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
    std::string out;
    if (!pipe) {
        status = -1;
        return out;
    }
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), got);
    status = pclose(pipe.release());
    return out;
}

Checker determinism(const std::string& cli) {
    Checker c;
    AnalysisConfig config;
    config.trend_decimals = 2;
    const auto s = testing::precip_events();
    std::string first;
    std::string second;
    const auto start = std::chrono::steady_clock::now();
    first = to_json_text(run_pipeline(s, config));
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    second = to_json_text(run_pipeline(s, config));
    c.that("in-process JSON differs between runs", first == second);
    c.that("pipeline took " + Checker::fmt(ms) + " ms", ms < 1000.0);

    std::string detail = "pipeline " + Checker::fmt(ms) + " ms";
    if (!cli.empty()) {
        const auto cmd = "'" + cli + "' analyze --input '" + testing::fixture("precip_events.csv") +
                         "' --format json --trend-decimals 2";
        int st1 = 0;
        int st2 = 0;
        const auto cli_start = std::chrono::steady_clock::now();
        const auto a = run_command(cmd, st1);
        const double cli_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - cli_start).count();
        const auto b = run_command(cmd, st2);
        c.that("CLI exit status " + std::to_string(st1) + "/" + std::to_string(st2), st1 == 0 && st2 == 0);
        c.that("CLI output empty", !a.empty());
        c.that("CLI JSON differs between runs", a == b);
        c.that("CLI analyze took " + Checker::fmt(cli_ms) + " ms", cli_ms < 1000.0);
        detail += ", CLI " + Checker::fmt(cli_ms) + " ms, " + std::to_string(a.size()) + " bytes identical";
    }
    c.note(detail);
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    struct Criterion {
        const char* name;
        std::function<Checker()> run;
    };
    const std::vector<Criterion> criteria{
        {"POT compact and zero-filled forms", pot_semantics},
        {"raw AR(1) regression report", raw_ar1},
        {"raw AR(2)/AR(3) reports", raw_ar23},
        {"detrended AR(1..3) reports", detrended_ar},
        {"lag-1 correlations", lag_correlations},
        {"residual table and outlier", residual_golden},
        {"Z-test order selection", order_selection},
        {"OLS property suite", ols_properties},
        {"t and F distribution kernels", distribution_kernels},
        {"Mann-Kendall exact oracle and rank invariance", mann_kendall_suite},
        {"GEV normalization and continuity", gev_suite},
        {"risk curve closed form", risk_suite},
        {"pipeline determinism", [&] { return determinism(cli); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Checker result;
        try {
            result = criteria[i].run();
        } catch (const std::exception& e) {
            result.fail(std::string("exception: ") + e.what());
        }
        failed += !result.ok();
        std::printf("%s [%2zu] %s: %s\n", result.ok() ? "PASS" : "FAIL", i + 1, criteria[i].name,
                    result.detail().c_str());
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
