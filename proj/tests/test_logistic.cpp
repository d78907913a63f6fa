#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/LU>

#include "riskbounds/format.hpp"
#include "riskbounds/logistic.hpp"

using namespace riskbounds;

namespace {

CategoryTable vrag() {
  return CategoryTable("vrag", {{1, 11, 0}, {2, 71, 6}, {3, 101, 12}, {4, 111, 19}, {5, 116, 41},
                                {6, 96, 42}, {7, 74, 41}, {8, 29, 22}, {9, 9, 9}});
}

CategoryTable symmetric() { return CategoryTable("sym", {{1, 10, 5}, {2, 10, 5}}); }
CategoryTable two_point() { return CategoryTable("two", {{1, 100, 10}, {2, 100, 90}}); }

struct Published {
  double lo95, hi95, lo80, hi80;
};

// Logistic-regression columns of the VRAG group-risk table.
constexpr Published kVragLogistic[] = {
    {0.02, 0.06, 0.03, 0.05}, {0.05, 0.10, 0.05, 0.09}, {0.09, 0.16, 0.10, 0.14},
    {0.16, 0.24, 0.17, 0.22}, {0.27, 0.35, 0.28, 0.34}, {0.40, 0.51, 0.42, 0.49},
    {0.53, 0.67, 0.56, 0.65}, {0.66, 0.80, 0.68, 0.78}, {0.76, 0.89, 0.79, 0.88},
};

}  // namespace

TEST_CASE("VRAG fit matches an independent GLM solver") {
  // Reference: statsmodels GLM(Binomial), tol 1e-14.
  const auto fit = fit_grouped_logistic(vrag());
  CHECK(fit.converged);
  CHECK(fit.iterations < 10);
  CHECK(fit.beta0() == doctest::Approx(-3.834593460263829).epsilon(1e-9));
  CHECK(fit.beta1() == doctest::Approx(0.6074616933367485).epsilon(1e-9));
  CHECK(fit.cov(0, 0) == doctest::Approx(0.11394521556692087).epsilon(1e-7));
  CHECK(fit.cov(0, 1) == doctest::Approx(-0.019880026089917267).epsilon(1e-7));
  CHECK(fit.cov(1, 1) == doctest::Approx(0.003781004961207789).epsilon(1e-7));
  CHECK(fit.deviance == doctest::Approx(6.7140323447701915).epsilon(1e-8));
  CHECK(fit.cov(0, 1) == fit.cov(1, 0));
  CHECK(fit.cov.determinant() > 0.0);
}

TEST_CASE("published logistic intervals, both levels") {
  const auto fit = fit_grouped_logistic(vrag());
  for (int c = 1; c <= 9; ++c) {
    const auto& want = kVragLogistic[c - 1];
    const auto i95 = predict_risk(fit, c, 0.05).interval;
    const auto i80 = predict_risk(fit, c, 0.20).interval;
    CAPTURE(c);
    CHECK(std::fabs(round_half_away(i95.lower, 2) - want.lo95) <= 0.01 + 1e-9);
    CHECK(std::fabs(round_half_away(i95.upper, 2) - want.hi95) <= 0.01 + 1e-9);
    CHECK(std::fabs(round_half_away(i80.lower, 2) - want.lo80) <= 0.01 + 1e-9);
    CHECK(std::fabs(round_half_away(i80.upper, 2) - want.hi80) <= 0.01 + 1e-9);
    CHECK(i95.method == IntervalMethod::logistic_delta);
    CHECK(i95.valid);
  }
  // Spot rows quoted exactly.
  const auto c5 = predict_risk(fit, 5, 0.05).interval;
  CHECK(round_half_away(c5.lower, 2) == doctest::Approx(0.27));
  CHECK(round_half_away(c5.upper, 2) == doctest::Approx(0.35));
  const auto c5_80 = predict_risk(fit, 5, 0.20).interval;
  CHECK(round_half_away(c5_80.lower, 2) == doctest::Approx(0.28));
  CHECK(round_half_away(c5_80.upper, 2) == doctest::Approx(0.34));
  const auto c1 = predict_risk(fit, 1, 0.05).interval;
  CHECK(round_half_away(c1.lower, 2) == doctest::Approx(0.02));
  CHECK(round_half_away(c1.upper, 2) == doctest::Approx(0.06));
}

TEST_CASE("symmetric two-stratum data give a flat fit") {
  const auto fit = fit_grouped_logistic(symmetric());
  CHECK(std::fabs(fit.beta1()) < 1e-12);
  for (int c : {1, 2, 7}) CHECK(predict_risk(fit, c, 0.05).risk == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(trend_test(fit).p_value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("two-point fit interpolates exactly") {
  const auto fit = fit_grouped_logistic(two_point());
  const double slope = 2.0 * std::log(9.0);
  CHECK(fit.beta1() == doctest::Approx(slope).epsilon(1e-10));
  CHECK(fit.beta0() == doctest::Approx(logit(0.1) - slope).epsilon(1e-10));
  CHECK(fit.deviance < 1e-10);

  // Saturated two-point fit: var(beta1) = 1/(n1 p1 q1) + 1/(n2 p2 q2).
  const double var = 1.0 / 9.0 + 1.0 / 9.0;
  CHECK(fit.cov(1, 1) == doctest::Approx(var).epsilon(1e-9));
  const auto tt = trend_test(fit);
  CHECK(tt.wald_chi2 == doctest::Approx(slope * slope / var).epsilon(1e-9));
  CHECK(tt.p_value < 0.001);
}

TEST_CASE("VRAG trend test is highly significant") {
  const auto tt = trend_test(fit_grouped_logistic(vrag()));
  CHECK(tt.wald_chi2 == doctest::Approx(97.59566905029263).epsilon(1e-7));
  CHECK(tt.p_value < 1e-4);
}

TEST_CASE("score equations hold at the MLE") {
  for (const auto& table : {vrag(), symmetric(), two_point(), expand_weights(vrag(), 100)}) {
    const auto fit = fit_grouped_logistic(table);
    const Eigen::Vector2d s = score(table, fit.beta);
    CHECK(std::fabs(s[0]) < 1e-8);
    CHECK(std::fabs(s[1]) < 1e-8);
  }
}

TEST_CASE("analytic score matches central differences of the log-likelihood") {
  const auto table = vrag();
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> b0(-6.0, 2.0), b1(-1.0, 1.5);
  const double h = 1e-6;
  for (int i = 0; i < 10; ++i) {
    const Eigen::Vector2d beta(b0(gen), b1(gen));
    const Eigen::Vector2d analytic = score(table, beta);
    for (int j = 0; j < 2; ++j) {
      Eigen::Vector2d up = beta, dn = beta;
      up[j] += h;
      dn[j] -= h;
      const double numeric = (log_likelihood(table, up) - log_likelihood(table, dn)) / (2.0 * h);
      CHECK(std::fabs(numeric - analytic[j]) <= 1e-4 * std::max(1.0, std::fabs(analytic[j])));
    }
  }
}

TEST_CASE("Fisher information matches central differences of the score") {
  const auto table = vrag();
  const Eigen::Vector2d beta(-3.0, 0.4);
  const Eigen::Matrix2d info = fisher_information(table, beta);
  const double h = 1e-6;
  for (int j = 0; j < 2; ++j) {
    Eigen::Vector2d up = beta, dn = beta;
    up[j] += h;
    dn[j] -= h;
    const Eigen::Vector2d col = -(score(table, up) - score(table, dn)) / (2.0 * h);
    CHECK(col[0] == doctest::Approx(info(0, j)).epsilon(1e-6));
    CHECK(col[1] == doctest::Approx(info(1, j)).epsilon(1e-6));
  }
}

TEST_CASE("fitted risks are monotone and intervals nested and interior") {
  const auto fit = fit_grouped_logistic(vrag());
  double previous = 0.0;
  for (int c = 1; c <= 9; ++c) {
    const auto p95 = predict_risk(fit, c, 0.05);
    const auto p80 = predict_risk(fit, c, 0.20);
    CHECK(p95.risk > previous);
    previous = p95.risk;
    CHECK(p95.interval.lower > 0.0);
    CHECK(p95.interval.upper < 1.0);
    CHECK(p95.interval.lower <= p80.interval.lower);
    CHECK(p80.interval.upper <= p95.interval.upper);
    CHECK(p95.risk == doctest::Approx(1.0 / (1.0 + std::exp(-p95.eta))));
  }
}

TEST_CASE("interval collapses as alpha approaches one") {
  const auto fit = fit_grouped_logistic(vrag());
  const auto p = predict_risk(fit, 4, 1.0 - 1e-12);
  CHECK(p.interval.width() < 1e-10);
}

TEST_CASE("interval narrowing under replication") {
  const auto rows = interval_narrowing_experiment(vrag(), {1, 100}, 0.05);
  REQUIRE(rows.size() == 18);
  for (std::size_t i = 0; i < 9; ++i) {
    const auto& base = rows[i];
    const auto& big = rows[i + 9];
    CHECK(base.factor == 1);
    CHECK(big.factor == 100);
    CHECK(base.category == big.category);
    const double ratio = big.width() / base.width();
    CHECK(ratio >= 0.095);
    CHECK(ratio <= 0.105);
    CHECK(big.fitted == doctest::Approx(base.fitted).epsilon(1e-10));
  }
  // k = 1 widths are the 95% logistic widths.
  const auto fit = fit_grouped_logistic(vrag());
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(rows[i].width() == doctest::Approx(predict_risk(fit, rows[i].category, 0.05).interval.width()));
  }
}

TEST_CASE("figure data") {
  const auto table = vrag();
  const auto rows = figure_data(fit_grouped_logistic(table), table, 0.05);
  REQUIRE(rows.size() == 9);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].fitted > rows[i - 1].fitted);
  CHECK(rows[8].observed == 1.0);
  CHECK(rows[8].fitted < 1.0);

  const auto flat = figure_data(fit_grouped_logistic(symmetric()), symmetric(), 0.05);
  for (const auto& r : flat) CHECK(r.fitted == doctest::Approx(0.5));
}

TEST_CASE("fit preconditions and failures") {
  CHECK_THROWS_AS(fit_grouped_logistic(CategoryTable("one", {{1, 10, 3}})), ValidationError);
  CHECK_THROWS_AS(fit_grouped_logistic(CategoryTable("none", {{1, 10, 0}, {2, 10, 0}})), ValidationError);
  CHECK_THROWS_AS(fit_grouped_logistic(CategoryTable("all", {{1, 10, 10}, {2, 5, 5}})), ValidationError);
  CHECK_THROWS_AS(fit_grouped_logistic(CategoryTable("sep", {{1, 10, 0}, {2, 10, 10}})), NumericalError);
  CHECK_THROWS_AS(fit_grouped_logistic(CategoryTable("quasi", {{1, 10, 0}, {2, 10, 4}, {3, 10, 10}})),
                  NumericalError);
  CHECK_THROWS_AS(fit_grouped_logistic(CategoryTable("rev", {{1, 10, 10}, {2, 10, 0}})), NumericalError);

  FitOptions one_step;
  one_step.max_iterations = 1;
  try {
    fit_grouped_logistic(vrag(), one_step);
    FAIL("expected non-convergence");
  } catch (const ConvergenceError& e) {
    CHECK(e.trace().size() == 2);
  }
}
