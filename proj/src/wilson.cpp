#include "riskbounds/wilson.hpp"

#include <string>

#include "riskbounds/distributions.hpp"

namespace riskbounds {

namespace {

bool near_integer(double x) { return std::fabs(x - std::round(x)) <= 1e-9; }

}  // namespace

bool is_observable_sample(double theta_hat, double n) {
  return n == std::round(n) && near_integer(theta_hat * n);
}

IntervalEstimate wilson_interval(const WilsonInput& input) {
  if (!(input.theta_hat >= 0.0 && input.theta_hat <= 1.0))
    throw InputError("observed proportion must lie in [0, 1]");
  if (!(input.n > 0.0) || !std::isfinite(input.n)) throw InputError("sample size must be positive");
  if (!(input.alpha > 0.0 && input.alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");

  const double z = normal_critical_value(input.alpha);
  const auto [lo, hi] = wilson_bounds(input.theta_hat, input.n, z);
  const bool observable = is_observable_sample(input.theta_hat, input.n);
  return make_interval(input.theta_hat, lo, hi, 1.0 - input.alpha,
                       observable ? IntervalMethod::wilson : IntervalMethod::fictitious_wilson,
                       observable ? std::string{} : "fictitious-sample: fractional persons or events");
}

IntervalEstimate wilson_interval(std::int64_t events, std::int64_t n, double alpha) {
  if (n < 1) throw InputError("sample size must be positive");
  if (events < 0 || events > n) throw InputError("events must lie in [0, n]");
  return wilson_interval({static_cast<double>(events) / static_cast<double>(n), static_cast<double>(n), alpha});
}

CoverageReport exact_coverage(std::int64_t n, double p_true, double level) {
  if (n < 1) throw InputError("coverage requires n >= 1");
  if (!(p_true >= 0.0 && p_true <= 1.0)) throw InputError("true probability must lie in [0, 1]");
  if (!(level > 0.0 && level < 1.0)) throw InputError("confidence level must lie in (0, 1)");

  CoverageReport report{n, p_true, level, 0.0, {}};
  report.per_outcome.reserve(static_cast<std::size_t>(n) + 1);
  const double alpha = 1.0 - level;
  for (std::int64_t k = 0; k <= n; ++k) {
    CoverageOutcome o;
    o.k = k;
    o.probability = binomial_pmf(n, k, p_true);
    o.interval = wilson_interval(k, n, alpha);
    o.covered = o.interval.contains(p_true);
    if (o.covered) report.coverage += o.probability;
    report.per_outcome.push_back(std::move(o));
  }
  return report;
}

}  // namespace riskbounds
