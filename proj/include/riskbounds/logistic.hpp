#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "riskbounds/category_table.hpp"
#include "riskbounds/types.hpp"

namespace riskbounds {

/// Numerically stable logistic map.
template <std::floating_point T>
T logistic(T eta) {
  if (eta >= 0) return T(1) / (T(1) + std::exp(-eta));
  const T e = std::exp(eta);
  return e / (T(1) + e);
}

inline double logit(double p) { return std::log(p / (1.0 - p)); }

/// log(1 + e^x) without overflow.
template <typename Derived>
auto softplus(const Eigen::ArrayBase<Derived>& x) {
  return x.max(0) + (-x.abs()).exp().log1p();
}

/// Intercept column plus category index (equal spacing, uncentered).
Eigen::Matrix<double, Eigen::Dynamic, 2> design_matrix(const CategoryTable& table);

/// Binomial log-likelihood of the grouped data, omitting the constant
/// binomial coefficients.
double log_likelihood(const CategoryTable& table, const Eigen::Vector2d& beta);
Eigen::Vector2d score(const CategoryTable& table, const Eigen::Vector2d& beta);
Eigen::Matrix2d fisher_information(const CategoryTable& table, const Eigen::Vector2d& beta);
/// -2 log-likelihood relative to the saturated model.
double deviance(const CategoryTable& table, const Eigen::Vector2d& beta);

struct IterationRecord {
  int iteration = 0;
  Eigen::Vector2d beta = Eigen::Vector2d::Zero();
  double deviance = 0.0;
};

class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, std::vector<IterationRecord> trace)
      : NumericalError(what), trace_(std::move(trace)) {}
  const std::vector<IterationRecord>& trace() const { return trace_; }

 private:
  std::vector<IterationRecord> trace_;
};

struct LogisticFit {
  Eigen::Vector2d beta = Eigen::Vector2d::Zero();
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  double deviance = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<IterationRecord> trace;

  double beta0() const { return beta[0]; }
  double beta1() const { return beta[1]; }
  double eta(double x) const { return beta[0] + beta[1] * x; }
};

struct FitOptions {
  double deviance_tolerance = 1e-10;
  int max_iterations = 50;
  double separation_slope = 50.0;
};

/// Maximum-likelihood fit of logit(risk) = beta0 + beta1 * category by
/// Newton-Raphson (IRLS). The covariance is the inverse Fisher information
/// at the estimate.
///
/// Throws ValidationError for fewer than two strata, all-zero or all-event
/// data; NumericalError for complete or quasi-complete separation; ConvergenceError when the
/// iteration limit is hit or the slope runs away.
LogisticFit fit_grouped_logistic(const CategoryTable& table, const FitOptions& options = {});

struct RiskPrediction {
  double category = 0.0;
  double eta = 0.0;
  double se_eta = 0.0;
  double risk = 0.0;
  IntervalEstimate interval;
};

/// Group-risk interval for a stratum: eta -/+ z * SE(eta) mapped through the
/// logistic function.
RiskPrediction predict_risk(const LogisticFit& fit, double category, double alpha);

struct TrendTest {
  double wald_chi2 = 0.0;
  double p_value = 1.0;
};

/// Wald chi-square (1 df) test of a zero slope.
TrendTest trend_test(const LogisticFit& fit);

struct NarrowingRow {
  Count factor = 1;
  Count category = 0;
  double fitted = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double width() const { return upper - lower; }
};

/// Refits on the table replicated by each factor and reports the interval
/// width per stratum.
std::vector<NarrowingRow> interval_narrowing_experiment(const CategoryTable& table,
                                                        const std::vector<Count>& factors, double alpha);

struct FigureRow {
  Count category = 0;
  double observed = 0.0;
  double fitted = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

std::vector<FigureRow> figure_data(const LogisticFit& fit, const CategoryTable& table, double alpha);

}  // namespace riskbounds
