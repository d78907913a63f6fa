#include <doctest.h>

#include <cmath>
#include <random>

#include "riskbounds/identifiability.hpp"
#include "riskbounds/scenario_config.hpp"
#include "riskbounds/types.hpp"

using namespace riskbounds;

namespace {

const RiskDistribution kScenarioA = PointRisk{0.6};
const RiskDistribution kScenarioB = TwoPointRisk{1.0, 0.6, 0.0};

ScenarioSpec spec(RiskDistribution risk, std::int64_t n, std::int64_t m, std::uint64_t seed = 0) {
  return {risk, n, m, seed};
}

// Oracle: enumerate every assignment of the two mixture components to n
// people, convolve the resulting Bernoulli outcomes, and weight.
Eigen::VectorXd two_point_oracle(const TwoPointRisk& d, int n) {
  Eigen::VectorXd total = Eigen::VectorXd::Zero(n + 1);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    double weight = 1.0;
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(n + 1);
    counts[0] = 1.0;
    for (int i = 0; i < n; ++i) {
      const bool first = (mask >> i) & 1u;
      weight *= first ? d.w1 : 1.0 - d.w1;
      const double p = first ? d.p1 : d.p2;
      Eigen::VectorXd next = Eigen::VectorXd::Zero(n + 1);
      for (int k = 0; k <= i; ++k) {
        next[k] += counts[k] * (1.0 - p);
        next[k + 1] += counts[k] * p;
      }
      counts = next;
    }
    total += weight * counts;
  }
  return total;
}

RiskDistribution random_with_mean(double mu, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  switch (gen() % 3) {
    case 0:
      return PointRisk{mu};
    case 1: {
      const double p1 = mu + (1.0 - mu) * unit(gen);
      const double p2 = mu * unit(gen);
      return TwoPointRisk{p1, (mu - p2) / (p1 - p2), p2};
    }
    default: {
      const double a = 0.1 + 20.0 * unit(gen);
      return BetaRisk{a, a * (1.0 - mu) / mu};
    }
  }
}

}  // namespace

TEST_CASE("scenarios A and B have identical count distributions at n = 2") {
  const Eigen::VectorXd a = exact_count_distribution(spec(kScenarioA, 2, 1));
  const Eigen::VectorXd b = exact_count_distribution(spec(kScenarioB, 2, 1));
  const Eigen::Vector3d want(0.16, 0.48, 0.36);
  CHECK((a - want).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((b - want).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(marginal_equivalence_check(spec(kScenarioA, 2, 1), spec(kScenarioB, 2, 1), 2) < 1e-12);
}

TEST_CASE("exact count distribution agrees with mixture enumeration") {
  for (const auto& d : {TwoPointRisk{1.0, 0.6, 0.0}, TwoPointRisk{0.9, 0.25, 0.1}, TwoPointRisk{0.3, 0.5, 0.3}}) {
    for (int n : {1, 2, 5, 9}) {
      const Eigen::VectorXd exact = exact_count_distribution(spec(d, n, 1));
      CHECK((exact - two_point_oracle(d, n)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("degenerate and beta cases") {
  const Eigen::VectorXd zero = exact_count_distribution(spec(PointRisk{0.0}, 4, 1));
  CHECK(zero[0] == 1.0);
  CHECK(zero.tail(4).sum() == 0.0);

  CHECK(count_distribution_distance(PointRisk{0.3}, BetaRisk{3.0, 7.0}, 8) < 1e-12);
  CHECK(count_distribution_distance(PointRisk{0.3}, PointRisk{0.4}, 1) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK_THROWS_AS(marginal_equivalence_check(spec(PointRisk{0.3}, 1, 1), spec(PointRisk{0.4}, 1, 1), 1), InputError);
  CHECK_THROWS_AS(marginal_equivalence_check(spec(kScenarioA, 2, 5), spec(kScenarioB, 2, 1), 2), InputError);
  CHECK_THROWS_AS(exact_count_distribution(spec(kScenarioA, 2, 3)), InputError);
}

TEST_CASE("beta single-outcome counts simulate to the binomial") {
  // Pooled over seeds, counts should follow Binomial(4, 0.3).
  const auto exact = exact_count_distribution(spec(BetaRisk{3.0, 7.0}, 4, 1));
  Eigen::VectorXd freq = Eigen::VectorXd::Zero(5);
  const int seeds = 20000;
  for (int s = 0; s < seeds; ++s) freq[simulate_repeated(spec(BetaRisk{3.0, 7.0}, 4, 1, s)).outcomes.sum()] += 1.0;
  freq /= seeds;
  CHECK(total_variation(freq, exact) < 0.015);
}

TEST_CASE("property: equal-mean risk distributions are indistinguishable") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> unit(0.02, 0.98);
  for (int trial = 0; trial < 50; ++trial) {
    const double mu = unit(gen);
    const auto a = random_with_mean(mu, gen);
    const auto b = random_with_mean(mu, gen);
    const auto n = 1 + static_cast<std::int64_t>(gen() % 40);
    CAPTURE(describe(a));
    CAPTURE(describe(b));
    CHECK(marginal_equivalence_check(spec(a, n, 1), spec(b, n, 1), n) < 1e-12);
  }
}

TEST_CASE("total variation pads shorter vectors") {
  CHECK(total_variation(Eigen::Vector2d(0.5, 0.5), Eigen::Vector3d(0.5, 0.25, 0.25)) == doctest::Approx(0.25));
  CHECK(total_variation(Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(1.0, 0.0)) == 0.0);
}

TEST_CASE("repeated simulation: structure and reproducibility") {
  const auto b = simulate_repeated(spec(kScenarioB, 10, 5, 42));
  CHECK(b.individuals() == 10);
  CHECK(b.repeats() == 5);
  for (Eigen::Index i = 0; i < b.individuals(); ++i) {
    const int s = b.row_sums()[i];
    CHECK((s == 0 || s == 5));
  }
  CHECK(b.ids.front() == 1);
  CHECK(b.ids.back() == 10);

  const auto again = simulate_repeated(spec(kScenarioB, 10, 5, 42));
  CHECK((again.outcomes == b.outcomes).all());
  CHECK((again.latent_risk == b.latent_risk).all());
  const auto other = simulate_repeated(spec(kScenarioA, 200, 5, 43));
  CHECK((simulate_repeated(spec(kScenarioA, 200, 5, 44)).outcomes != other.outcomes).any());

  const auto ones = simulate_repeated(spec(PointRisk{1.0}, 6, 3, 1));
  CHECK((ones.outcomes == 1).all());

  // Row i depends only on (seed, i): a larger cohort extends a smaller one.
  const auto big = simulate_repeated(spec(kScenarioA, 20, 5, 42));
  const auto small = simulate_repeated(spec(kScenarioA, 10, 5, 42));
  CHECK((big.outcomes.topRows(10) == small.outcomes).all());
}

TEST_CASE("scenario A rows are mixed") {
  const auto a = simulate_repeated(spec(kScenarioA, 200, 5, 7));
  const auto sums = a.row_sums();
  CHECK(((sums > 0) && (sums < 5)).count() > 100);
  CHECK(sums.cast<double>().mean() == doctest::Approx(3.0).epsilon(0.1));
}

TEST_CASE("clustering test on scenario B data") {
  const auto b = simulate_repeated(spec(kScenarioB, 10, 5, 42));
  const auto r = clustering_test(b);
  REQUIRE(r.defined);
  CHECK(r.df == 9.0);
  CHECK(r.p_value < 0.001);
  // Fifty observations: no permutation p-value.
  CHECK_FALSE(r.permutation_p.has_value());
}

TEST_CASE("clustering test: power over 1000 seeds") {
  int reject = 0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const auto r = clustering_test(simulate_repeated(spec(kScenarioB, 10, 5, s)));
    if (r.defined && r.p_value < 0.05) ++reject;
  }
  CHECK(reject >= 990);
}

TEST_CASE("clustering test: size under homogeneous risk") {
  // 200,000 replicates pin the size to about +/- 0.0005.
  for (double p : {0.6, 0.3}) {
    long reject = 0;
    const long reps = 200000;
    for (long s = 0; s < reps; ++s) {
      const auto r = clustering_test(simulate_repeated(spec(PointRisk{p}, 10, 5, static_cast<std::uint64_t>(s))));
      if (r.defined && r.p_value < 0.05) ++reject;
    }
    const double size = static_cast<double>(reject) / reps;
    CAPTURE(p);
    CAPTURE(size);
    CHECK(size >= 0.03);
    CHECK(size <= 0.08);
  }
}

TEST_CASE("clustering test hand example and edge cases") {
  RepeatedOutcomes d;
  d.outcomes.resize(2, 2);
  d.outcomes << 1, 1, 0, 0;
  d.ids = {1, 2};
  // Pooled 0.5; row sums 2 and 0 deviate by 1: statistic = 2 / (2 * 0.25) = 4.
  auto r = clustering_test(d);
  CHECK(r.defined);
  CHECK(r.statistic == doctest::Approx(4.0));
  CHECK(r.p_value == doctest::Approx(std::erfc(std::sqrt(2.0))).epsilon(1e-12));
  REQUIRE(r.permutation_p.has_value());
  // Of the 6 equally likely arrangements, 2 are this extreme.
  CHECK(*r.permutation_p == doctest::Approx(1.0 / 3.0).epsilon(0.05));

  ClusteringOptions fixed;
  fixed.seed = 5;
  CHECK(clustering_test(d, fixed).permutation_p == clustering_test(d, fixed).permutation_p);

  const auto ones = clustering_test(simulate_repeated(spec(PointRisk{1.0}, 10, 5, 0)));
  CHECK_FALSE(ones.defined);
  CHECK(ones.p_value == 1.0);

  RepeatedOutcomes single;
  single.outcomes = Eigen::ArrayXXi::Ones(3, 1);
  CHECK_THROWS_AS(clustering_test(single), InputError);
  RepeatedOutcomes bad;
  bad.outcomes = Eigen::ArrayXXi::Constant(2, 2, 2);
  CHECK_THROWS_AS(clustering_test(bad), InputError);
}

TEST_CASE("intraclass correlation") {
  RepeatedOutcomes d;
  d.outcomes.resize(2, 2);
  d.outcomes << 1, 1, 0, 0;
  const auto perfect = icc_estimate(d);
  CHECK(perfect.defined);
  CHECK(perfect.estimate == doctest::Approx(1.0));

  CHECK_FALSE(icc_estimate(simulate_repeated(spec(PointRisk{0.0}, 5, 3, 0))).defined);

  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto b = icc_estimate(simulate_repeated(spec(kScenarioB, 1000, 5, s)));
    const auto a = icc_estimate(simulate_repeated(spec(kScenarioA, 1000, 5, s)));
    CAPTURE(s);
    CHECK(b.estimate >= 0.9);
    CHECK(b.estimate <= 1.0 + 1e-12);
    CHECK(a.estimate >= -0.05);
    CHECK(a.estimate <= 0.05);
    CHECK(a.estimate >= -1.0 / 4.0);
  }
}

TEST_CASE("risk distribution parsing and validation") {
  CHECK(std::get<PointRisk>(parse_risk_distribution("point 0.6")).p == 0.6);
  const auto tp = std::get<TwoPointRisk>(parse_risk_distribution("two_point 1 0.6 0"));
  CHECK(tp.p1 == 1.0);
  CHECK(tp.w1 == 0.6);
  CHECK(mean_risk(BetaRisk{3, 7}) == doctest::Approx(0.3));
  CHECK_THROWS_AS(parse_risk_distribution("point 1.2"), InputError);
  CHECK_THROWS_AS(parse_risk_distribution("beta 0 1"), InputError);
  CHECK_THROWS_AS(parse_risk_distribution("two_point 1 0.5"), InputError);
  CHECK_THROWS_AS(parse_risk_distribution("gauss 0 1"), InputError);
  CHECK_THROWS_AS(parse_risk_distribution(""), InputError);
}

TEST_CASE("simulation config parsing") {
  const auto cfg = parse_simulation_config(
      "# scenario B\nmodel = repeated\nrisk = two_point 1.0 0.6 0.0\ncompare = point 0.6\n"
      "n = 10\nrepeats = 5\nseed = 42\n");
  CHECK(cfg.model == SimulationModel::repeated);
  CHECK(cfg.scenario.sample_size == 10);
  CHECK(cfg.scenario.repeats == 5);
  REQUIRE(cfg.seed.has_value());
  CHECK(*cfg.seed == 42);
  REQUIRE(cfg.compare.has_value());
  CHECK(std::holds_alternative<PointRisk>(*cfg.compare));

  const auto th = parse_simulation_config("model = threshold\nprovocation_rate = 0\nn = 50\nfollow_up = 2\n");
  CHECK(th.model == SimulationModel::threshold);
  CHECK(th.threshold.provocation_rate == 0.0);
  CHECK(th.threshold.follow_up == 2.0);

  try {
    parse_simulation_config("n = 3\nbogus = 1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_simulation_config("n = three\n"), ParseError);
  CHECK_THROWS_AS(parse_simulation_config("risk = point 2\n"), ParseError);
  CHECK_THROWS_AS(parse_simulation_config("model = other\n"), ParseError);
  CHECK_THROWS_AS(parse_simulation_config("n 3\n"), ParseError);
}
