#include "riskbounds/identifiability.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "riskbounds/distributions.hpp"
#include "riskbounds/types.hpp"

namespace riskbounds {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

void require_balanced(const RepeatedOutcomes& data, Eigen::Index min_n, Eigen::Index min_m) {
  if (data.individuals() < min_n) throw InputError("need at least " + std::to_string(min_n) + " individuals");
  if (data.repeats() < min_m) throw InputError("need at least " + std::to_string(min_m) + " repeats");
  if (((data.outcomes != 0) && (data.outcomes != 1)).any()) throw InputError("outcomes must be 0 or 1");
}

double pearson_statistic(const Eigen::ArrayXi& row_sums, double m, double pooled) {
  const Eigen::ArrayXd dev = row_sums.cast<double>() - m * pooled;
  return dev.square().sum() / (m * pooled * (1.0 - pooled));
}

}  // namespace

void validate(const RiskDistribution& dist) {
  std::visit(overloaded{
                 [](const PointRisk& d) {
                   if (!is_probability(d.p)) throw InputError("point risk must lie in [0, 1]");
                 },
                 [](const TwoPointRisk& d) {
                   if (!is_probability(d.p1) || !is_probability(d.p2))
                     throw InputError("two-point risks must lie in [0, 1]");
                   if (!is_probability(d.w1)) throw InputError("mixture weight must lie in [0, 1]");
                 },
                 [](const BetaRisk& d) {
                   if (!(d.a > 0.0 && d.b > 0.0)) throw InputError("beta shapes must be positive");
                 },
             },
             dist);
}

double mean_risk(const RiskDistribution& dist) {
  return std::visit(overloaded{
                        [](const PointRisk& d) { return d.p; },
                        [](const TwoPointRisk& d) { return d.w1 * d.p1 + (1.0 - d.w1) * d.p2; },
                        [](const BetaRisk& d) { return d.a / (d.a + d.b); },
                    },
                    dist);
}

double draw_risk(const RiskDistribution& dist, Rng& rng) {
  return std::visit(overloaded{
                        [](const PointRisk& d) { return d.p; },
                        [&](const TwoPointRisk& d) { return rng.bernoulli(d.w1) ? d.p1 : d.p2; },
                        [&](const BetaRisk& d) { return rng.beta(d.a, d.b); },
                    },
                    dist);
}

std::string describe(const RiskDistribution& dist) {
  std::ostringstream os;
  const auto num = [](double x) {
    // Shortest of %.15g / %.17g that round-trips.
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    if (std::strtod(buf, nullptr) != x) std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  std::visit(overloaded{
                 [&](const PointRisk& d) { os << "point " << num(d.p); },
                 [&](const TwoPointRisk& d) { os << "two_point " << num(d.p1) << ' ' << num(d.w1) << ' ' << num(d.p2); },
                 [&](const BetaRisk& d) { os << "beta " << num(d.a) << ' ' << num(d.b); },
             },
             dist);
  return os.str();
}

Eigen::VectorXd exact_count_distribution(const ScenarioSpec& spec) {
  validate(spec.risk);
  if (spec.repeats != 1) throw InputError("exact count distribution assumes one outcome per individual");
  if (spec.sample_size < 1) throw InputError("sample size must be positive");
  const double mu = mean_risk(spec.risk);
  Eigen::VectorXd dist(spec.sample_size + 1);
  for (std::int64_t k = 0; k <= spec.sample_size; ++k) dist[k] = binomial_pmf(spec.sample_size, k, mu);
  return dist;
}

double total_variation(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  const auto len = std::max(p.size(), q.size());
  Eigen::VectorXd a = Eigen::VectorXd::Zero(len);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(len);
  a.head(p.size()) = p;
  b.head(q.size()) = q;
  return 0.5 * (a - b).cwiseAbs().sum();
}

double count_distribution_distance(const RiskDistribution& a, const RiskDistribution& b, std::int64_t n) {
  return total_variation(exact_count_distribution({a, n, 1, 0}), exact_count_distribution({b, n, 1, 0}));
}

double marginal_equivalence_check(const ScenarioSpec& a, const ScenarioSpec& b, std::int64_t n) {
  if (a.repeats != 1 || b.repeats != 1) throw InputError("marginal equivalence applies to single-outcome designs");
  validate(a.risk);
  validate(b.risk);
  if (std::fabs(mean_risk(a.risk) - mean_risk(b.risk)) > 1e-12)
    throw InputError("scenarios have different mean risks; equivalence only holds at equal means");
  return count_distribution_distance(a.risk, b.risk, n);
}

RepeatedOutcomes simulate_repeated(const ScenarioSpec& spec) {
  validate(spec.risk);
  if (spec.sample_size < 1) throw InputError("sample size must be positive");
  if (spec.repeats < 1) throw InputError("repeats must be >= 1");

  RepeatedOutcomes out;
  out.seed = spec.seed;
  out.ids.resize(static_cast<std::size_t>(spec.sample_size));
  std::iota(out.ids.begin(), out.ids.end(), std::int64_t{1});
  out.outcomes.resize(spec.sample_size, spec.repeats);
  out.latent_risk.resize(spec.sample_size);
  for (std::int64_t i = 0; i < spec.sample_size; ++i) {
    Rng rng(spec.seed, static_cast<std::uint64_t>(i));
    const double risk = draw_risk(spec.risk, rng);
    out.latent_risk[i] = risk;
    for (std::int64_t j = 0; j < spec.repeats; ++j) out.outcomes(i, j) = rng.bernoulli(risk) ? 1 : 0;
  }
  return out;
}

ClusteringResult clustering_test(const RepeatedOutcomes& data, const ClusteringOptions& options) {
  require_balanced(data, 2, 2);
  const auto n = data.individuals();
  const auto m = static_cast<double>(data.repeats());
  const double pooled = static_cast<double>(data.outcomes.sum()) / (static_cast<double>(n) * m);

  ClusteringResult result;
  result.df = static_cast<double>(n - 1);
  if (pooled <= 0.0 || pooled >= 1.0) return result;

  result.defined = true;
  result.statistic = pearson_statistic(data.row_sums(), m, pooled);
  result.p_value = chi_square_sf(result.statistic, result.df);

  if (static_cast<std::int64_t>(data.outcomes.size()) < options.permutation_below && options.permutations > 0) {
    // Shuffle all outcomes across cells; the pooled proportion is invariant.
    Rng rng(options.seed.value_or(data.seed), 0xC1A55E5ULL);
    Eigen::ArrayXXi shuffled = data.outcomes;
    std::int64_t extreme = 0;
    for (std::int64_t b = 0; b < options.permutations; ++b) {
      rng.shuffle(std::span<int>(shuffled.data(), static_cast<std::size_t>(shuffled.size())));
      const double stat = pearson_statistic(shuffled.rowwise().sum(), m, pooled);
      if (stat >= result.statistic - 1e-9) ++extreme;
    }
    result.permutation_p = static_cast<double>(extreme + 1) / static_cast<double>(options.permutations + 1);
  }
  return result;
}

IccResult icc_estimate(const RepeatedOutcomes& data) {
  require_balanced(data, 2, 2);
  const auto n = static_cast<double>(data.individuals());
  const auto m = static_cast<double>(data.repeats());
  const Eigen::ArrayXXd y = data.outcomes.cast<double>();
  const Eigen::ArrayXd row_mean = y.rowwise().mean();
  const double grand = y.mean();
  if (grand <= 0.0 || grand >= 1.0) return {};

  const double msb = m * (row_mean - grand).square().sum() / (n - 1.0);
  const double msw = (y.colwise() - row_mean).square().sum() / (n * (m - 1.0));
  return {(msb - msw) / (msb + (m - 1.0) * msw), true};
}

}  // namespace riskbounds
