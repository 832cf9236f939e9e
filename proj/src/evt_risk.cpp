#include "extremes/evt_risk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "extremes/distributions.hpp"
#include "extremes/error.hpp"

namespace extremes {

namespace {

// Below this |m * delta_s| the exponential interpolant is treated by its
// series expansion.
constexpr double kFlatSegment = 1e-8;

// h(u) = e^u - (e^u - 1) / u, the first moment of the exponential hazard
// interpolant over a unit interval; h(u) -> u/2 + u^2/3 as u -> 0.
double first_moment_factor(double u) {
    if (std::fabs(u) < kFlatSegment) return u / 2.0 + u * u / 3.0;
    return std::exp(u) - std::expm1(u) / u;
}

}  // namespace

double gev_pdf(double x, const GevParams& params) {
    if (!(params.sigma > 0.0)) throw UsageError("GEV scale sigma must be > 0");
    const double z = (x - params.mu) / params.sigma;
    if (params.xi == 0.0) {
        const double e = std::exp(-z);
        if (std::isinf(e)) return 0.0;
        return std::exp(-z - e) / params.sigma;
    }
    const double t = 1.0 + params.xi * z;
    if (!(t > 0.0)) return 0.0;
    // Log density, with log1p to stay accurate as xi -> 0.
    const double log_t = std::log1p(params.xi * z);
    const double t_pow = std::exp(-log_t / params.xi);
    if (std::isinf(t_pow)) return 0.0;
    return std::exp(-(1.0 + 1.0 / params.xi) * log_t - t_pow) / params.sigma;
}

LognormalParams lognormal_params(double mean, double cov) {
    if (!(mean > 0.0)) throw UsageError("mean loss must be > 0");
    if (!(cov >= 0.0)) throw UsageError("coefficient of variation must be >= 0");
    const double one_plus = 1.0 + cov * cov;
    return {mean / std::sqrt(one_plus), std::sqrt(std::log(one_plus))};
}

VulnerabilityPoint VulnerabilityPoint::make(double s, double mean_loss, double cov) {
    const auto ln = lognormal_params(mean_loss, cov);
    return {s, mean_loss, cov, ln.theta, ln.beta};
}

double conditional_nonexceedance(double x, const VulnerabilityPoint& point) {
    if (std::isnan(x) || x < 0.0) throw UsageError("loss must be >= 0");
    if (x == 0.0) return 0.0;
    if (point.beta == 0.0) return x >= point.theta ? 1.0 : 0.0;
    return dist::normal_cdf(std::log(x / point.theta) / point.beta);
}

HazardCurve::HazardCurve(std::vector<HazardPoint> points) : points_(std::move(points)) {
    if (points_.size() < 2) throw UsageError("hazard curve needs at least 2 points");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        if (!std::isfinite(p.s) || !std::isfinite(p.g)) {
            throw DataError("hazard point " + std::to_string(i + 1) + " is not finite");
        }
        if (!(p.g > 0.0)) {
            throw UsageError("hazard frequency must be positive at point " + std::to_string(i + 1));
        }
        if (i > 0) {
            if (!(p.s > points_[i - 1].s)) {
                throw UsageError("hazard intensities must be strictly increasing at point " +
                                 std::to_string(i + 1));
            }
            if (p.g > points_[i - 1].g) {
                throw UsageError("hazard frequencies must be non-increasing at point " +
                                 std::to_string(i + 1));
            }
        }
    }
}

std::vector<RiskSegment> risk_segments(double x, const HazardCurve& hazard,
                                       std::span<const VulnerabilityPoint> vulnerability) {
    const auto& h = hazard.points();
    if (vulnerability.size() != h.size()) {
        throw UsageError("vulnerability has " + std::to_string(vulnerability.size()) +
                         " points, hazard has " + std::to_string(h.size()));
    }
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double tol = 1e-12 * std::max(1.0, std::fabs(h[i].s));
        if (std::fabs(vulnerability[i].s - h[i].s) > tol) {
            throw UsageError("vulnerability point " + std::to_string(i + 1) +
                             " is not aligned with the hazard grid");
        }
    }

    std::vector<RiskSegment> segments;
    segments.reserve(h.size() - 1);
    double p_prev = conditional_nonexceedance(x, vulnerability[0]);
    for (std::size_t i = 1; i < h.size(); ++i) {
        const double p_cur = conditional_nonexceedance(x, vulnerability[i]);
        RiskSegment seg;
        seg.delta_s = h[i].s - h[i - 1].s;
        const double log_ratio = std::log(h[i].g / h[i - 1].g);
        seg.m = log_ratio / seg.delta_s;
        seg.p_prev = p_prev;
        seg.delta_p = p_cur - p_prev;
        seg.a = h[i - 1].g - h[i].g;
        seg.b = -h[i - 1].g * first_moment_factor(log_ratio);
        seg.contribution = (1.0 - seg.p_prev) * seg.a - seg.delta_p * seg.b;
        segments.push_back(seg);
        p_prev = p_cur;
    }
    return segments;
}

RiskCurve risk_curve(std::span<const double> x_grid, const HazardCurve& hazard,
                     std::span<const VulnerabilityPoint> vulnerability) {
    RiskCurve curve;
    curve.loss.assign(x_grid.begin(), x_grid.end());
    curve.frequency.reserve(x_grid.size());
    for (double x : x_grid) {
        double r = 0.0;
        for (const auto& seg : risk_segments(x, hazard, vulnerability)) r += seg.contribution;
        curve.frequency.push_back(std::max(0.0, r));
    }
    return curve;
}

}  // namespace extremes
