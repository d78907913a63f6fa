#include "riskbounds/threshold_model.hpp"

#include <cmath>
#include <numeric>

#include "riskbounds/distributions.hpp"
#include "riskbounds/types.hpp"

namespace riskbounds {

void validate(const ThresholdModelSpec& spec) {
  if (!(spec.provocation_rate >= 0.0)) throw InputError("provocation rate must be >= 0");
  if (!(spec.follow_up > 0.0)) throw InputError("follow-up must be positive");
  if (!(spec.mean_threshold.spread >= 0.0) || !(spec.provocation_strength.spread >= 0.0) ||
      !(spec.threshold_fluctuation_sd >= 0.0))
    throw InputError("spreads must be >= 0");
}

double exceedance_probability(const ThresholdModelSpec& spec, double threshold) {
  // strength - (threshold + fluctuation) ~ N(mu_s - threshold, s_s^2 + s_f^2)
  const double sd = std::hypot(spec.provocation_strength.spread, spec.threshold_fluctuation_sd);
  const double gap = spec.provocation_strength.location - threshold;
  if (sd == 0.0) return gap > 0.0 ? 1.0 : 0.0;
  return normal_cdf(gap / sd);
}

double latent_risk(const ThresholdModelSpec& spec, double threshold) {
  return -std::expm1(-spec.provocation_rate * spec.follow_up * exceedance_probability(spec, threshold));
}

double mean_latent_risk(const ThresholdModelSpec& spec) {
  validate(spec);
  const auto [mu, sd] = spec.mean_threshold;
  if (sd == 0.0) return latent_risk(spec, mu);

  constexpr int kPanels = 4000;  // even
  const double lo = -12.0;
  const double h = 24.0 / kPanels;
  double acc = 0.0;
  for (int i = 0; i <= kPanels; ++i) {
    const double z = lo + i * h;
    const double weight = (i == 0 || i == kPanels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    acc += weight * normal_pdf(z) * latent_risk(spec, mu + sd * z);
  }
  return acc * h / 3.0;
}

RepeatedOutcomes simulate_threshold_cohort(const ThresholdModelSpec& spec, std::int64_t n, std::uint64_t seed) {
  validate(spec);
  if (n < 1) throw InputError("cohort size must be positive");

  RepeatedOutcomes out;
  out.seed = seed;
  out.ids.resize(static_cast<std::size_t>(n));
  std::iota(out.ids.begin(), out.ids.end(), std::int64_t{1});
  out.outcomes = Eigen::ArrayXXi::Zero(n, 1);
  out.latent_risk.resize(n);

  const double expected_provocations = spec.provocation_rate * spec.follow_up;
  for (std::int64_t i = 0; i < n; ++i) {
    Rng rng(seed, static_cast<std::uint64_t>(i));
    const double threshold = rng.normal(spec.mean_threshold.location, spec.mean_threshold.spread);
    out.latent_risk[i] = latent_risk(spec, threshold);

    const auto provocations = rng.poisson(expected_provocations);
    bool event = false;
    for (std::uint64_t k = 0; k < provocations; ++k) {
      const double strength = rng.normal(spec.provocation_strength.location, spec.provocation_strength.spread);
      const double wobble = rng.normal(0.0, spec.threshold_fluctuation_sd);
      // Draw every provocation even after an event so streams stay aligned.
      event = event || strength > threshold + wobble;
    }
    out.outcomes(i, 0) = event ? 1 : 0;
  }
  return out;
}

}  // namespace riskbounds
