#pragma once

// Reproductions of interval constructions that have been offered as intervals
// for an individual's risk. None of them has a coverage interpretation; every
// result is marked invalid and carries a refutation note.

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

#include "riskbounds/types.hpp"

namespace riskbounds {

inline constexpr std::string_view kFictitiousSampleNote =
    "refuted: Wilson formula evaluated at a fictitious n=1 sample; "
    "single-outcome data cannot identify individual risk";
inline constexpr std::string_view kPseudoPredictionNote =
    "refuted: linear-regression prediction bounds pushed through the logistic map; "
    "sigma has no meaning for a binary outcome";

/// Wilson's formula with n forced to 1, read as an interval for one person.
IntervalEstimate hmc_individual_interval(double theta_hat, double alpha);

struct CM1PseudoInput {
  double beta0 = 0.0;
  double beta1 = 0.0;
  double sigma_hat = 0.0;  ///< required; no estimator exists for it
  std::int64_t n = 2;
  double x_bar = 0.0;
  double ss_x = 1.0;  ///< corrected sum of squares of the predictor
  double x_new = 0.0;
  double alpha = 0.05;
  std::optional<std::int64_t> df;  ///< defaults to n - 2
};

/// Linear predictor bounds b0 + b1 x_new -/+ t * sigma * sqrt(1 + 1/n + (x_new - x_bar)^2 / SS(x)).
std::pair<double, double> cm1_linear_bounds(const CM1PseudoInput& input);

/// The linear bounds above mapped to probabilities by the logistic function.
IntervalEstimate cm1_pseudo_interval(const CM1PseudoInput& input);

}  // namespace riskbounds
