#pragma once

namespace extremes::dist {

/// Regularized incomplete beta I_x(a, b), evaluated with a modified-Lentz
/// continued fraction (relative convergence 1e-15, at most 1000 terms).
double incomplete_beta(double a, double b, double x);

double normal_cdf(double z);
/// Inverse of normal_cdf for p in (0, 1).
double normal_quantile(double p);

double student_t_cdf(double t, double df);

/// Pr{|T| > |t|} with T ~ Student t(df). df must be >= 1.
double student_t_two_sided_p(double t, int df);

/// Quantile of the Student t distribution: returns q with cdf(q) = p.
double student_t_quantile(double p, int df);

/// Pr{F(d1, d2) > f}. f must be >= 0.
double f_upper_tail(double f, int d1, int d2);

}  // namespace extremes::dist
