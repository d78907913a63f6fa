#include "riskbounds/logistic.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "riskbounds/distributions.hpp"

namespace riskbounds {

namespace {

// x log(x / m), with 0 log 0 = 0.
double xlogx_over(double x, double m) { return x > 0.0 ? x * std::log(x / m) : 0.0; }

// Complete or quasi-complete separation on a single ordered predictor: some
// cut leaves only non-events below and only events above (or the reverse),
// with at most one mixed stratum sitting on the cut.
bool is_separated(const CategoryTable& table) {
  const auto& rows = table.rows();
  const auto n = rows.size();
  const auto all_none = [&](std::size_t i) { return rows[i].events == 0; };
  const auto all_some = [&](std::size_t i) { return rows[i].events == rows[i].total; };

  for (const bool events_high : {true, false}) {
    const auto low = [&](std::size_t i) { return events_high ? all_none(i) : all_some(i); };
    const auto high = [&](std::size_t i) { return events_high ? all_some(i) : all_none(i); };
    std::size_t i = 0;
    while (i < n && low(i)) ++i;
    std::size_t j = n;
    while (j > i && high(j - 1)) --j;
    if (j - i <= 1) return true;
  }
  return false;
}

}  // namespace

Eigen::Matrix<double, Eigen::Dynamic, 2> design_matrix(const CategoryTable& table) {
  Eigen::Matrix<double, Eigen::Dynamic, 2> x(static_cast<Eigen::Index>(table.size()), 2);
  x.col(0).setOnes();
  x.col(1) = table.categories();
  return x;
}

double log_likelihood(const CategoryTable& table, const Eigen::Vector2d& beta) {
  const Eigen::ArrayXd eta = (design_matrix(table) * beta).array();
  const Eigen::ArrayXd y = table.event_counts().array();
  const Eigen::ArrayXd n = table.totals().array();
  return (y * eta - n * softplus(eta)).sum();
}

Eigen::Vector2d score(const CategoryTable& table, const Eigen::Vector2d& beta) {
  const auto x = design_matrix(table);
  const Eigen::ArrayXd mu = (x * beta).array().logistic();
  const Eigen::VectorXd resid = (table.event_counts().array() - table.totals().array() * mu).matrix();
  return x.transpose() * resid;
}

Eigen::Matrix2d fisher_information(const CategoryTable& table, const Eigen::Vector2d& beta) {
  const auto x = design_matrix(table);
  const Eigen::ArrayXd mu = (x * beta).array().logistic();
  const Eigen::VectorXd w = (table.totals().array() * mu * (1.0 - mu)).matrix();
  return x.transpose() * w.asDiagonal() * x;
}

double deviance(const CategoryTable& table, const Eigen::Vector2d& beta) {
  const auto x = design_matrix(table);
  const Eigen::ArrayXd mu = (x * beta).array().logistic();
  double dev = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& r = table.rows()[i];
    const double n = static_cast<double>(r.total);
    const double y = static_cast<double>(r.events);
    const auto k = static_cast<Eigen::Index>(i);
    dev += xlogx_over(y, n * mu[k]) + xlogx_over(n - y, n * (1.0 - mu[k]));
  }
  return 2.0 * dev;
}

LogisticFit fit_grouped_logistic(const CategoryTable& table, const FitOptions& options) {
  if (table.size() < 2) throw ValidationError("logistic fit needs at least two strata");
  if (table.events() == 0) throw ValidationError("logistic fit needs at least one event");
  if (table.events() == table.total()) throw ValidationError("logistic fit needs at least one non-event");
  if (is_separated(table)) throw NumericalError("categories completely separate events from non-events");

  LogisticFit fit;
  const double pooled = static_cast<double>(table.events()) / static_cast<double>(table.total());
  fit.beta << logit(pooled), 0.0;
  fit.deviance = deviance(table, fit.beta);
  fit.trace.push_back({0, fit.beta, fit.deviance});

  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    const Eigen::Matrix2d info = fisher_information(table, fit.beta);
    const Eigen::Vector2d step = info.ldlt().solve(score(table, fit.beta));
    fit.beta += step;
    const double dev = deviance(table, fit.beta);
    const double change = std::fabs(dev - fit.deviance);
    fit.deviance = dev;
    fit.iterations = iter;
    fit.trace.push_back({iter, fit.beta, dev});

    if (!fit.beta.allFinite() || std::fabs(fit.beta[1]) > options.separation_slope)
      throw ConvergenceError("slope diverged; data look separated", fit.trace);
    if (change < options.deviance_tolerance) {
      fit.converged = true;
      break;
    }
  }
  if (!fit.converged)
    throw ConvergenceError("no convergence after " + std::to_string(options.max_iterations) + " iterations",
                           fit.trace);

  const Eigen::Matrix2d cov = fisher_information(table, fit.beta).inverse();
  fit.cov = 0.5 * (cov + cov.transpose());
  return fit;
}

RiskPrediction predict_risk(const LogisticFit& fit, double category, double alpha) {
  if (!fit.converged) throw InputError("prediction requires a converged fit");
  const double z = normal_critical_value(alpha);
  const Eigen::Vector2d v(1.0, category);
  RiskPrediction out;
  out.category = category;
  out.eta = fit.eta(category);
  out.se_eta = std::sqrt(v.dot(fit.cov * v));
  out.risk = logistic(out.eta);
  out.interval = make_interval(out.risk, logistic(out.eta - z * out.se_eta), logistic(out.eta + z * out.se_eta),
                               1.0 - alpha, IntervalMethod::logistic_delta);
  return out;
}

TrendTest trend_test(const LogisticFit& fit) {
  if (!fit.converged) throw InputError("trend test requires a converged fit");
  const double var = fit.cov(1, 1);
  if (!(var > 0.0)) throw NumericalError("slope variance is not positive");
  const double chi2 = fit.beta1() * fit.beta1() / var;
  return {chi2, chi_square_sf(chi2, 1.0)};
}

std::vector<NarrowingRow> interval_narrowing_experiment(const CategoryTable& table,
                                                        const std::vector<Count>& factors, double alpha) {
  std::vector<NarrowingRow> rows;
  for (const auto k : factors) {
    const auto expanded = expand_weights(table, k);
    const auto fit = fit_grouped_logistic(expanded);
    for (const auto& r : expanded.rows()) {
      const auto pred = predict_risk(fit, static_cast<double>(r.category), alpha);
      rows.push_back({k, r.category, pred.risk, pred.interval.lower, pred.interval.upper});
    }
  }
  return rows;
}

std::vector<FigureRow> figure_data(const LogisticFit& fit, const CategoryTable& table, double alpha) {
  std::vector<FigureRow> rows;
  rows.reserve(table.size());
  for (const auto& r : table.rows()) {
    const auto pred = predict_risk(fit, static_cast<double>(r.category), alpha);
    rows.push_back({r.category, r.proportion(), pred.risk, pred.interval.lower, pred.interval.upper});
  }
  return rows;
}

}  // namespace riskbounds
