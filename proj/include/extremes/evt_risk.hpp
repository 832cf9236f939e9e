#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace extremes {

struct GevParams {
    double mu = 0.0;
    double sigma = 1.0;  // > 0
    double xi = 0.0;
};

/// Generalized extreme value density. xi == 0 is the Gumbel form; outside
/// the support 1 + xi (x - mu) / sigma > 0 the density is 0.
double gev_pdf(double x, const GevParams& params);

struct LognormalParams {
    double theta = 0.0;  // median
    double beta = 0.0;   // log standard deviation
};

/// Median and log-sd of a lognormal with the given mean and coefficient of
/// variation.
LognormalParams lognormal_params(double mean, double cov);

struct VulnerabilityPoint {
    double s = 0.0;
    double mean_loss = 0.0;
    double cov = 0.0;
    double theta = 0.0;
    double beta = 0.0;

    /// Derives theta and beta from mean_loss and cov.
    static VulnerabilityPoint make(double s, double mean_loss, double cov);
};

/// P[X <= x | S = s] for lognormal loss; a unit step at theta when beta == 0.
double conditional_nonexceedance(double x, const VulnerabilityPoint& point);

struct HazardPoint {
    double s = 0.0;
    double g = 0.0;  // mean annual frequency of excitation exceeding s
};

/// Validated hazard curve: s strictly increasing, G positive and
/// non-increasing, at least two points.
class HazardCurve {
public:
    explicit HazardCurve(std::vector<HazardPoint> points);

    [[nodiscard]] const std::vector<HazardPoint>& points() const noexcept { return points_; }
    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }

private:
    std::vector<HazardPoint> points_;
};

/// Contribution of the interval [s_{i-1}, s_i] to R(x):
///   (1 - p_{i-1}) * a - delta_p * b
/// with a = G_{i-1} - G_i and b from the exponential hazard interpolant.
struct RiskSegment {
    double delta_s = 0.0;
    double m = 0.0;  // ln(G_i / G_{i-1}) / delta_s
    double delta_p = 0.0;
    double p_prev = 0.0;
    double a = 0.0;
    double b = 0.0;
    double contribution = 0.0;
};

struct RiskCurve {
    std::vector<double> loss;
    std::vector<double> frequency;  // R(x)
};

/// Per-segment terms of R(x). Throws UsageError when vulnerability points
/// are not aligned with the hazard grid.
std::vector<RiskSegment> risk_segments(double x, const HazardCurve& hazard,
                                       std::span<const VulnerabilityPoint> vulnerability);

/// Annual frequency with which each loss in x_grid is exceeded: the integral
/// of (1 - P[X <= x | s]) (-dG/ds) between the first and last hazard points,
/// with G exponential and P linear in s on every interval.
RiskCurve risk_curve(std::span<const double> x_grid, const HazardCurve& hazard,
                     std::span<const VulnerabilityPoint> vulnerability);

}  // namespace extremes
