#pragma once

#include <cstdint>

#include "riskbounds/identifiability.hpp"

namespace riskbounds {

/// Location and spread of a Gaussian quantity.
struct LocationScale {
  double location = 0.0;
  double spread = 0.0;
};

/// Latent threshold / provocation model of violent events.
///
/// Each person has a mean threshold drawn once. Provocations arrive as a
/// Poisson process over the follow-up; each has a Gaussian strength and is
/// met by the threshold plus a fresh Gaussian fluctuation. An event occurs if
/// any provocation exceeds the fluctuating threshold.
struct ThresholdModelSpec {
  LocationScale mean_threshold{0.0, 1.0};
  double threshold_fluctuation_sd = 0.0;
  double provocation_rate = 1.0;
  LocationScale provocation_strength{0.0, 1.0};
  double follow_up = 1.0;
};

void validate(const ThresholdModelSpec& spec);

/// Probability that one provocation beats a person whose mean threshold is
/// `threshold`.
double exceedance_probability(const ThresholdModelSpec& spec, double threshold);

/// Exact event risk over the follow-up for that person, by Poisson thinning:
/// 1 - exp(-rate * follow_up * exceedance).
double latent_risk(const ThresholdModelSpec& spec, double threshold);

/// Population mean of the latent risk, integrating over the threshold
/// distribution (composite Simpson over +/- 12 spreads).
double mean_latent_risk(const ThresholdModelSpec& spec);

/// One outcome per person (m = 1) plus each person's exact latent risk.
/// Person i uses substream i of the seed.
RepeatedOutcomes simulate_threshold_cohort(const ThresholdModelSpec& spec, std::int64_t n, std::uint64_t seed);

}  // namespace riskbounds
