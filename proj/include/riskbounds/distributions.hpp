#pragma once

#include <cstdint>

namespace riskbounds {

double normal_cdf(double x);
double normal_pdf(double x);

/// Inverse standard normal CDF (Wichura's AS 241, ~1e-16 relative accuracy).
/// Throws InputError unless 0 < p < 1.
double standard_normal_quantile(double p);

/// Two-sided critical value z such that P(|Z| > z) = alpha.
double normal_critical_value(double alpha);

/// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

/// Regularized upper incomplete gamma Q(a, x).
double upper_incomplete_gamma(double a, double x);

double student_t_cdf(double t, double df);

/// Inverse Student-t CDF. Closed forms for df = 1, 2; Newton refinement on
/// the incomplete-beta CDF otherwise. Throws InputError on invalid args.
double student_t_quantile(double p, std::int64_t df);

/// Upper tail P(X > x) for X ~ chi-square(df).
double chi_square_sf(double x, double df);

/// log P(K = k) for K ~ Binomial(n, p), via log-gamma.
double log_binomial_pmf(std::int64_t n, std::int64_t k, double p);
double binomial_pmf(std::int64_t n, std::int64_t k, double p);

}  // namespace riskbounds
