#include "riskbounds/refuted.hpp"

#include <cmath>
#include <string>

#include "riskbounds/distributions.hpp"
#include "riskbounds/logistic.hpp"
#include "riskbounds/wilson.hpp"

namespace riskbounds {

IntervalEstimate hmc_individual_interval(double theta_hat, double alpha) {
  if (!(theta_hat >= 0.0 && theta_hat <= 1.0)) throw InputError("observed proportion must lie in [0, 1]");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");
  const auto [lo, hi] = wilson_bounds(theta_hat, 1.0, normal_critical_value(alpha));
  return make_interval(theta_hat, lo, hi, 1.0 - alpha, IntervalMethod::fictitious_wilson,
                       std::string(kFictitiousSampleNote));
}

namespace {

void validate(const CM1PseudoInput& in) {
  if (in.n < 2) throw InputError("n must be at least 2");
  if (!(in.ss_x > 0.0)) throw InputError("SS(x) must be positive");
  if (!(in.sigma_hat >= 0.0)) throw InputError("sigma must be non-negative");
  if (!(in.alpha > 0.0 && in.alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");
  const auto df = in.df.value_or(in.n - 2);
  if (df < 1) throw InputError("t degrees of freedom must be >= 1 (n - 2 is zero; pass df explicitly)");
}

}  // namespace

std::pair<double, double> cm1_linear_bounds(const CM1PseudoInput& in) {
  validate(in);
  const auto df = in.df.value_or(in.n - 2);
  const double t = student_t_quantile(1.0 - 0.5 * in.alpha, df);
  const double dx = in.x_new - in.x_bar;
  const double center = in.beta0 + in.beta1 * in.x_new;
  const double half = t * in.sigma_hat * std::sqrt(1.0 + 1.0 / static_cast<double>(in.n) + dx * dx / in.ss_x);
  return {center - half, center + half};
}

IntervalEstimate cm1_pseudo_interval(const CM1PseudoInput& in) {
  const auto [lo, hi] = cm1_linear_bounds(in);
  return make_interval(logistic(in.beta0 + in.beta1 * in.x_new), logistic(lo), logistic(hi), 1.0 - in.alpha,
                       IntervalMethod::cm1_pseudo, std::string(kPseudoPredictionNote));
}

}  // namespace riskbounds
