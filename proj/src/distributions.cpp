#include "extremes/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "extremes/error.hpp"

namespace extremes::dist {

namespace {

constexpr int kMaxTerms = 1000;
constexpr double kEpsilon = 1e-15;
constexpr double kTiny = 1e-300;

// Continued fraction for I_x(a, b), modified Lentz. Converges fast for
// x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxTerms; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEpsilon) return h;
    }
    throw NumericalError("incomplete beta continued fraction did not converge (a=" +
                         std::to_string(a) + ", b=" + std::to_string(b) +
                         ", x=" + std::to_string(x) + ")");
}

// Bisection on a monotone increasing cdf.
template <typename Cdf>
double invert_cdf(Cdf cdf, double p) {
    double lo = -1.0;
    double hi = 1.0;
    while (cdf(lo) > p) lo *= 2.0;
    while (cdf(hi) < p) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (cdf(mid) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw UsageError("incomplete beta needs a > 0 and b > 0");
    if (!(x >= 0.0 && x <= 1.0)) throw UsageError("incomplete beta needs x in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;

    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw UsageError("normal quantile needs p in (0, 1)");
    return invert_cdf(normal_cdf, p);
}

double student_t_cdf(double t, double df) {
    if (!(df > 0.0)) throw UsageError("Student t needs df > 0");
    if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
    if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
    const double tail = 0.5 * incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
    return t > 0.0 ? 1.0 - tail : tail;
}

double student_t_two_sided_p(double t, int df) {
    if (df < 1) throw UsageError("Student t needs df >= 1, got " + std::to_string(df));
    if (std::isinf(t)) return 0.0;
    const double d = static_cast<double>(df);
    return incomplete_beta(0.5 * d, 0.5, d / (d + t * t));
}

double student_t_quantile(double p, int df) {
    if (df < 1) throw UsageError("Student t needs df >= 1, got " + std::to_string(df));
    if (!(p > 0.0 && p < 1.0)) throw UsageError("t quantile needs p in (0, 1)");
    const double d = static_cast<double>(df);
    return invert_cdf([d](double t) { return student_t_cdf(t, d); }, p);
}

double f_upper_tail(double f, int d1, int d2) {
    if (d1 < 1 || d2 < 1) throw UsageError("F distribution needs d1, d2 >= 1");
    if (std::isnan(f) || f < 0.0) throw UsageError("F statistic must be >= 0");
    if (f == 0.0) return 1.0;
    if (std::isinf(f)) return 0.0;
    const double a = static_cast<double>(d1);
    const double b = static_cast<double>(d2);
    return incomplete_beta(0.5 * b, 0.5 * a, b / (b + a * f));
}

}  // namespace extremes::dist
