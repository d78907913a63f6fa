#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "riskbounds/types.hpp"

namespace riskbounds {

/// Wilson score bounds for an observed proportion `theta` from `n` trials at
/// critical value `z`. Bounds are clamped to [0, 1].
template <typename Scalar>
std::pair<Scalar, Scalar> wilson_bounds(Scalar theta, Scalar n, Scalar z) {
  using std::sqrt;
  const Scalar z2 = z * z;
  const Scalar center = theta + z2 / (2 * n);
  const Scalar half = z * sqrt(theta * (1 - theta) / n + z2 / (4 * n * n));
  const Scalar denom = 1 + z2 / n;
  Scalar lo = (center - half) / denom;
  Scalar hi = (center + half) / denom;
  // At theta = 0 or 1 the formula's bound is exact; snap away rounding noise.
  if (theta <= 0) lo = 0;
  if (theta >= 1) hi = 1;
  return {lo < 0 ? Scalar(0) : lo, hi > 1 ? Scalar(1) : hi};
}

struct WilsonInput {
  double theta_hat = 0.0;
  double n = 1.0;  ///< real-valued so fictitious sample sizes can be expressed
  double alpha = 0.05;
};

/// Wilson interval. Flags the result `fictitious_wilson` (invalid) unless n is
/// an integer and theta_hat * n is within 1e-9 of an integer.
IntervalEstimate wilson_interval(const WilsonInput& input);

/// Convenience overload for observed counts.
IntervalEstimate wilson_interval(std::int64_t events, std::int64_t n, double alpha);

bool is_observable_sample(double theta_hat, double n);

struct CoverageOutcome {
  std::int64_t k = 0;
  double probability = 0.0;
  IntervalEstimate interval;
  bool covered = false;
};

struct CoverageReport {
  std::int64_t n = 0;
  double p_true = 0.0;
  double level = 0.95;
  double coverage = 0.0;
  std::vector<CoverageOutcome> per_outcome;
};

/// Exact coverage of the Wilson interval: enumerates every k in 0..n.
CoverageReport exact_coverage(std::int64_t n, double p_true, double level);

}  // namespace riskbounds
