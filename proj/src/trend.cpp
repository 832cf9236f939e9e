#include "extremes/trend.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "extremes/distributions.hpp"
#include "extremes/error.hpp"

namespace extremes {

namespace {

// Above this length, or with ties, the normal approximation is used.
constexpr std::size_t kExactMaxN = 10;

constexpr double kSnap = 64.0 * std::numeric_limits<double>::epsilon();

std::vector<double> observation_numbers(std::size_t n) {
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(i + 1);
    return t;
}

// Number of permutations of n distinct items with each inversion count
// (Mahonian numbers), built up one item at a time.
std::vector<double> inversion_counts(std::size_t n) {
    std::vector<double> counts{1.0};
    for (std::size_t m = 2; m <= n; ++m) {
        std::vector<double> next(counts.size() + m - 1, 0.0);
        for (std::size_t inv = 0; inv < counts.size(); ++inv) {
            for (std::size_t added = 0; added < m; ++added) next[inv + added] += counts[inv];
        }
        counts = std::move(next);
    }
    return counts;
}

double exact_two_sided_p(std::size_t n, std::int64_t s) {
    const auto counts = inversion_counts(n);
    const auto pairs = static_cast<std::int64_t>(n * (n - 1) / 2);
    double total = 0.0;
    double extreme = 0.0;
    for (std::size_t inv = 0; inv < counts.size(); ++inv) {
        total += counts[inv];
        const std::int64_t s_inv = pairs - 2 * static_cast<std::int64_t>(inv);
        if (std::llabs(s_inv) >= std::llabs(s)) extreme += counts[inv];
    }
    return extreme / total;
}

}  // namespace

TrendLine TrendLine::rounded(int decimals) const {
    const double scale = std::pow(10.0, decimals);
    TrendLine out = *this;
    out.intercept = std::round(intercept * scale) / scale;
    out.slope = std::round(slope * scale) / scale;
    return out;
}

RegressionReport trend_report(const TimeSeries& series) {
    if (series.size() < 3) {
        throw UsageError("trend fitting needs at least 3 observations, got " +
                         std::to_string(series.size()));
    }
    const auto values = series.values();
    return fit_ols(values, {observation_numbers(series.size())});
}

TrendLine fit_trend(const TimeSeries& series) {
    if (series.size() < 3) {
        throw UsageError("trend fitting needs at least 3 observations, got " +
                         std::to_string(series.size()));
    }
    const auto values = series.values();
    if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); })) {
        return {values.front(), 0.0, series.size()};
    }
    const auto rep = trend_report(series);
    return {rep.coefficients[0].estimate, rep.coefficients[1].estimate, series.size()};
}

TimeSeries detrend(const TimeSeries& series, const TrendLine& line, DetrendMode mode) {
    std::vector<Observation> out;
    out.reserve(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double predicted = line.at(static_cast<double>(i + 1));
        const double v = series[i].value;
        double d = v - predicted;
        // Differences at rounding level are an exact fit.
        if (std::fabs(d) <= kSnap * std::max(std::fabs(v), std::fabs(predicted))) d = 0.0;
        if (mode == DetrendMode::percent) {
            if (predicted == 0.0) {
                throw NumericalError("percent detrending: trend line is 0 at observation " +
                                     std::to_string(i + 1));
            }
            d = 100.0 * d / predicted;
        }
        out.push_back({series[i].index, d});
    }
    return TimeSeries(std::move(out));
}

MKResult mann_kendall(const TimeSeries& series, double alpha) {
    const std::size_t n = series.size();
    if (n < 4) {
        throw UsageError("Mann-Kendall needs at least 4 observations, got " + std::to_string(n));
    }
    if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("alpha must lie in (0, 1)");

    const auto v = series.values();
    MKResult r;
    r.alpha = alpha;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            r.s += (v[j] > v[i]) - (v[j] < v[i]);
        }
    }

    std::map<double, std::size_t> groups;
    for (double x : v) ++groups[x];
    const auto nn = static_cast<double>(n);
    double tie_term = 0.0;
    bool has_ties = false;
    for (const auto& [value, count] : groups) {
        if (count > 1) {
            has_ties = true;
            const auto t = static_cast<double>(count);
            tie_term += t * (t - 1.0) * (2.0 * t + 5.0);
        }
    }
    r.var_s = std::max(0.0, (nn * (nn - 1.0) * (2.0 * nn + 5.0) - tie_term) / 18.0);

    if (r.s != 0 && r.var_s > 0.0) {
        const double corrected = r.s > 0 ? static_cast<double>(r.s - 1) : static_cast<double>(r.s + 1);
        r.z = corrected / std::sqrt(r.var_s);
    }

    if (!has_ties && n <= kExactMaxN) {
        r.exact = true;
        r.p_value = exact_two_sided_p(n, r.s);
    } else {
        r.p_value = r.var_s > 0.0 ? 2.0 * dist::normal_cdf(-std::fabs(r.z)) : 1.0;
    }
    r.p_value = std::clamp(r.p_value, 0.0, 1.0);

    if (r.p_value < alpha && r.s != 0) {
        r.decision = r.s > 0 ? TrendDecision::increasing : TrendDecision::decreasing;
    }
    return r;
}

}  // namespace extremes
