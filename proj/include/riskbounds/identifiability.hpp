#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "riskbounds/rng.hpp"

namespace riskbounds {

/// Everyone shares risk p.
struct PointRisk {
  double p = 0.0;
};

/// Risk p1 with probability w1, otherwise p2.
struct TwoPointRisk {
  double p1 = 1.0;
  double w1 = 0.5;
  double p2 = 0.0;
};

/// Beta(a, b) distributed risks.
struct BetaRisk {
  double a = 1.0;
  double b = 1.0;
};

using RiskDistribution = std::variant<PointRisk, TwoPointRisk, BetaRisk>;

/// Throws InputError if a risk or weight leaves [0, 1] or a beta shape is not positive.
void validate(const RiskDistribution& dist);
double mean_risk(const RiskDistribution& dist);
double draw_risk(const RiskDistribution& dist, Rng& rng);
std::string describe(const RiskDistribution& dist);

struct ScenarioSpec {
  RiskDistribution risk = PointRisk{0.5};
  std::int64_t sample_size = 1;
  std::int64_t repeats = 1;
  std::uint64_t seed = 0;
};

/// Distribution of the event count over 0..n for one outcome per person drawn
/// at random from the population: Binomial(n, mean risk).
Eigen::VectorXd exact_count_distribution(const ScenarioSpec& spec);

/// Half the L1 distance. Vectors of different length are zero-padded.
double total_variation(const Eigen::VectorXd& p, const Eigen::VectorXd& q);

/// TV distance between the single-outcome count distributions of two risk
/// distributions; no precondition on their means.
double count_distribution_distance(const RiskDistribution& a, const RiskDistribution& b, std::int64_t n);

/// TV distance between the count distributions of two single-outcome
/// scenarios with equal mean risk. Throws InputError if the means differ or
/// either scenario has repeats != 1.
double marginal_equivalence_check(const ScenarioSpec& a, const ScenarioSpec& b, std::int64_t n);

/// Balanced binary outcomes: one row per individual, one column per repeat.
struct RepeatedOutcomes {
  std::vector<std::int64_t> ids;
  Eigen::ArrayXXi outcomes;
  Eigen::ArrayXd latent_risk;  ///< per-individual risk used to generate the row
  std::uint64_t seed = 0;

  Eigen::Index individuals() const { return outcomes.rows(); }
  Eigen::Index repeats() const { return outcomes.cols(); }
  Eigen::ArrayXi row_sums() const { return outcomes.rowwise().sum(); }
};

/// Individual i draws its risk once from the mixture using substream i of
/// the seed, then observes `repeats` Bernoulli outcomes from that risk.
RepeatedOutcomes simulate_repeated(const ScenarioSpec& spec);

struct ClusteringOptions {
  std::int64_t permutations = 10000;
  /// Designs with fewer total observations also get a permutation p-value.
  std::int64_t permutation_below = 40;
  std::optional<std::uint64_t> seed;  ///< defaults to the data's seed
};

struct ClusteringResult {
  double statistic = 0.0;
  double df = 0.0;
  double p_value = 1.0;
  bool defined = false;
  std::optional<double> permutation_p;
};

/// Pearson chi-square homogeneity test of the individuals' event counts
/// against the pooled proportion, n - 1 df. With pooled proportion 0 or 1
/// the test is undefined: `defined` is false and p = 1.
ClusteringResult clustering_test(const RepeatedOutcomes& data, const ClusteringOptions& options = {});

struct IccResult {
  double estimate = 0.0;
  bool defined = false;
};

/// One-way ANOVA moment estimator of the intraclass correlation,
/// (MSB - MSW) / (MSB + (m - 1) MSW).
IccResult icc_estimate(const RepeatedOutcomes& data);

}  // namespace riskbounds
