#include "cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "riskbounds/category_table.hpp"
#include "riskbounds/format.hpp"
#include "riskbounds/identifiability.hpp"
#include "riskbounds/logistic.hpp"
#include "riskbounds/refuted.hpp"
#include "riskbounds/scenario_config.hpp"
#include "riskbounds/threshold_model.hpp"
#include "riskbounds/wilson.hpp"

namespace riskbounds::cli {

namespace {

constexpr std::string_view kRefutationBanner[] = {
    "NOT A CONFIDENCE INTERVAL. The bounds below come from evaluating an interval formula",
    "outside the sampling model that gives it meaning. They have no coverage property and",
    "say nothing about any one person's risk. Shown for demonstration only (valid=false).",
};

struct RunManifest {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::optional<std::uint64_t> seed;
  std::string timestamp;

  void write(std::ostream& os) const {
    os << "# riskbounds " << RISKBOUNDS_VERSION << '\n';
    os << "# subcommand: " << subcommand << '\n';
    os << "# inputs:";
    if (inputs.empty()) os << " none";
    for (const auto& i : inputs) os << ' ' << i;
    os << '\n';
    os << "# parameters:";
    for (const auto& [k, v] : parameters) os << ' ' << k << '=' << v;
    os << '\n';
    os << "# seed: " << (seed ? std::to_string(*seed) : std::string("none")) << '\n';
    os << "# timestamp: " << timestamp << '\n';
  }
};

struct OutputOptions {
  std::string format = "csv";
  int digits = 4;
};

std::string iso_utc(std::time_t t) {
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string manifest_timestamp(const Environment& env) {
  if (env.timestamp) {
    char* end = nullptr;
    const long long epoch = std::strtoll(env.timestamp->c_str(), &end, 10);
    if (end && *end == '\0' && !env.timestamp->empty()) return iso_utc(static_cast<std::time_t>(epoch));
    return *env.timestamp;
  }
  return iso_utc(std::chrono::system_clock::to_time_t(std::chrono::system_clock::now()));
}

std::string general(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string join(const std::vector<double>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + general(values[i]);
  return s;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw InputError("not a number: '" + s + "'");
  return v;
}

void section(std::ostream& os, std::string_view title, const TextTable& table, TableFormat format) {
  os << "\n# " << title << '\n';
  table.write(os, format);
}

void add_output_options(CLI::App* sub, OutputOptions& opts) {
  sub->add_option("--format", opts.format, "csv, tsv or pretty")
      ->check(CLI::IsMember({"csv", "tsv", "pretty"}))
      ->capture_default_str();
  sub->add_option("--round", opts.digits, "decimals shown for estimates")
      ->check(CLI::Range(0, 12))
      ->capture_default_str();
}

void add_output_parameters(RunManifest& m, const OutputOptions& o) {
  m.parameters.emplace_back("format", o.format);
  m.parameters.emplace_back("round", std::to_string(o.digits));
}

// ---------------------------------------------------------------------------

struct WilsonArgs {
  std::string table;
  double alpha = 0.05;
  bool per_row = false;
  std::vector<std::string> fictitious;
  bool percent = false;
  OutputOptions out;
};

int cmd_wilson(const WilsonArgs& a, std::ostream& os, const Environment& env) {
  const auto format = parse_table_format(a.out.format);
  const double scale = a.percent ? 100.0 : 1.0;
  const int d = a.out.digits;

  TextTable t;
  t.header = {"row", "n", "events", "theta_hat", "lower", "upper", "level", "method", "valid"};
  RunManifest m{"wilson", {}, {{"alpha", general(a.alpha)}}, std::nullopt, manifest_timestamp(env)};

  const auto add_row = [&](const std::string& label, const std::string& n, const std::string& events,
                           const IntervalEstimate& iv) {
    t.add({label, n, events, format_fixed(scale * iv.point, d), format_fixed(scale * iv.lower, d),
           format_fixed(scale * iv.upper, d), general(iv.level), std::string(to_string(iv.method)),
           iv.valid ? "true" : "false"});
  };

  if (!a.fictitious.empty()) {
    if (!a.table.empty()) throw InputError("give either a table or --fictitious, not both");
    const double theta = to_double(a.fictitious.at(0));
    std::vector<double> sizes;
    for (const auto& s : split_list(a.fictitious.at(1))) sizes.push_back(to_double(s));
    if (sizes.empty()) throw InputError("--fictitious needs at least one sample size");
    m.parameters.emplace_back("fictitious_theta", general(theta));
    m.parameters.emplace_back("fictitious_n", join(sizes));
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      const auto iv = wilson_interval({theta, sizes[i], a.alpha});
      add_row(std::to_string(i + 1), general(sizes[i]), general(theta * sizes[i]), iv);
    }
  } else {
    if (a.table.empty()) throw InputError("wilson needs a table path or --fictitious THETA N-LIST");
    const auto table = read_category_table(a.table);
    m.inputs.push_back(a.table);
    for (const auto& r : table.rows()) {
      add_row(std::to_string(r.category), std::to_string(r.total), std::to_string(r.events),
              wilson_interval(r.events, r.total, a.alpha));
    }
  }
  if (a.percent) m.parameters.emplace_back("scale", "percent");
  add_output_parameters(m, a.out);

  m.write(os);
  section(os, "wilson intervals", t, format);
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct FitArgs {
  std::string table;
  std::vector<double> alphas{0.05};
  Count expand = 1;
  std::string figure;
  double figure_alpha = 0.05;
  OutputOptions out;
};

int cmd_fit(const FitArgs& a, std::ostream& os, const Environment& env) {
  const auto format = parse_table_format(a.out.format);
  const int d = a.out.digits;
  const auto table = expand_weights(read_category_table(a.table), a.expand);
  const auto fit = fit_grouped_logistic(table);
  const auto trend = trend_test(fit);

  RunManifest m{"fit",
                {a.table},
                {{"alpha", join(a.alphas)}, {"expand", std::to_string(a.expand)}},
                std::nullopt,
                manifest_timestamp(env)};
  if (!a.figure.empty()) m.parameters.emplace_back("figure_alpha", general(a.figure_alpha));
  add_output_parameters(m, a.out);

  TextTable summary;
  summary.header = {"beta0", "beta1", "se_beta0", "se_beta1", "cov_beta01", "deviance", "iterations", "converged"};
  summary.add({general(fit.beta0()), general(fit.beta1()), general(std::sqrt(fit.cov(0, 0))),
               general(std::sqrt(fit.cov(1, 1))), general(fit.cov(0, 1)), general(fit.deviance),
               std::to_string(fit.iterations), fit.converged ? "true" : "false"});

  TextTable intervals;
  intervals.header = {"category", "total", "events", "observed", "fitted", "level", "lower", "upper", "method", "valid"};
  for (const double alpha : a.alphas) {
    for (const auto& r : table.rows()) {
      const auto pred = predict_risk(fit, static_cast<double>(r.category), alpha);
      intervals.add({std::to_string(r.category), std::to_string(r.total), std::to_string(r.events),
                     format_fixed(r.proportion(), d), format_fixed(pred.risk, d), general(pred.interval.level),
                     format_fixed(pred.interval.lower, d), format_fixed(pred.interval.upper, d),
                     std::string(to_string(pred.interval.method)), pred.interval.valid ? "true" : "false"});
    }
  }

  TextTable trend_table;
  trend_table.header = {"wald_chi2", "df", "p_value"};
  trend_table.add({general(trend.wald_chi2), "1", general(trend.p_value)});

  m.write(os);
  section(os, "logistic fit", summary, format);
  section(os, "group-risk intervals", intervals, format);
  section(os, "trend test", trend_table, format);

  if (!a.figure.empty()) {
    std::ofstream fig(a.figure, std::ios::binary);
    if (!fig) throw InputError("cannot write '" + a.figure + "'");
    m.write(fig);
    TextTable t;
    t.header = {"category", "observed", "fitted", "lower", "upper"};
    for (const auto& row : figure_data(fit, table, a.figure_alpha)) {
      t.add({std::to_string(row.category), format_fixed(row.observed, d), format_fixed(row.fitted, d),
             format_fixed(row.lower, d), format_fixed(row.upper, d)});
    }
    t.write(fig, TableFormat::csv);
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct CoverageArgs {
  std::int64_t n = 0;
  double p = 0.5;
  double level = 0.95;
  OutputOptions out;
};

int cmd_coverage(const CoverageArgs& a, std::ostream& os, const Environment& env) {
  const auto format = parse_table_format(a.out.format);
  const int d = a.out.digits;
  const auto report = exact_coverage(a.n, a.p, a.level);

  RunManifest m{"coverage",
                {},
                {{"n", std::to_string(a.n)}, {"p", general(a.p)}, {"level", general(a.level)}},
                std::nullopt,
                manifest_timestamp(env)};
  add_output_parameters(m, a.out);

  TextTable outcomes;
  outcomes.header = {"k", "probability", "lower", "upper", "covered"};
  for (const auto& o : report.per_outcome) {
    outcomes.add({std::to_string(o.k), format_fixed(o.probability, d), format_fixed(o.interval.lower, d),
                  format_fixed(o.interval.upper, d), o.covered ? "true" : "false"});
  }
  TextTable summary;
  summary.header = {"n", "p_true", "level", "coverage"};
  summary.add({std::to_string(report.n), general(report.p_true), general(report.level),
               format_fixed(report.coverage, d)});

  m.write(os);
  section(os, "wilson outcomes", outcomes, format);
  section(os, "exact coverage", summary, format);
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::int64_t reps = 0;
  double alpha = 0.05;
  OutputOptions out;
};

std::uint64_t resolve_seed(const SimulateArgs& a, const SimulationConfig& cfg, const Environment& env) {
  if (a.seed) return *a.seed;
  if (cfg.seed) return *cfg.seed;
  if (env.seed) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(env.seed->data(), env.seed->data() + env.seed->size(), v);
    if (ec != std::errc{} || ptr != env.seed->data() + env.seed->size() || env.seed->empty())
      throw InputError("RISKBOUNDS_SEED is not an unsigned integer");
    return v;
  }
  return 0;
}

void write_outcomes(std::ostream& os, const RepeatedOutcomes& data, bool with_risk, TableFormat format, int d) {
  TextTable t;
  t.header = {"individual", "rep", "outcome"};
  if (with_risk) t.header.push_back("latent_risk");
  for (Eigen::Index i = 0; i < data.individuals(); ++i) {
    for (Eigen::Index j = 0; j < data.repeats(); ++j) {
      std::vector<std::string> row{std::to_string(data.ids[static_cast<std::size_t>(i)]), std::to_string(j + 1),
                                   std::to_string(data.outcomes(i, j))};
      if (with_risk) row.push_back(format_fixed(data.latent_risk[i], d));
      t.add(std::move(row));
    }
  }
  section(os, "outcomes", t, format);
}

int simulate_threshold(const SimulationConfig& cfg, std::uint64_t seed, std::ostream& os, TableFormat format, int d) {
  const auto n = cfg.scenario.sample_size;
  const auto data = simulate_threshold_cohort(cfg.threshold, n, seed);
  write_outcomes(os, data, true, format, d);

  const double observed = data.outcomes.cast<double>().mean();
  const double expected = mean_latent_risk(cfg.threshold);
  TextTable t;
  t.header = {"n", "observed_frequency", "mean_latent_risk", "sample_mean_latent_risk", "mc_sd"};
  t.add({std::to_string(n), format_fixed(observed, d), format_fixed(expected, d),
         format_fixed(data.latent_risk.mean(), d),
         format_fixed(std::sqrt(expected * (1.0 - expected) / static_cast<double>(n)), d)});
  section(os, "threshold cohort summary", t, format);
  return kSuccess;
}

int simulate_repeated_design(const SimulateArgs& a, const SimulationConfig& cfg, std::uint64_t seed, std::ostream& os,
                             TableFormat format, int d) {
  ScenarioSpec spec = cfg.scenario;
  spec.seed = seed;

  // Single-outcome count distributions.
  ScenarioSpec single = spec;
  single.repeats = 1;
  const auto dist = exact_count_distribution(single);
  std::optional<Eigen::VectorXd> other;
  if (cfg.compare) {
    ScenarioSpec cmp = single;
    cmp.risk = *cfg.compare;
    other = exact_count_distribution(cmp);
  }
  TextTable exact;
  exact.header = {"count", "scenario"};
  if (other) exact.header.push_back("compare");
  for (Eigen::Index k = 0; k < dist.size(); ++k) {
    std::vector<std::string> row{std::to_string(k), format_fixed(dist[k], d)};
    if (other) row.push_back(format_fixed((*other)[k], d));
    exact.add(std::move(row));
  }
  section(os, "exact count distribution, one outcome per individual", exact, format);

  if (cfg.compare) {
    TextTable eq;
    eq.header = {"scenario_mean", "compare_mean", "tv_distance"};
    eq.add({general(mean_risk(spec.risk)), general(mean_risk(*cfg.compare)),
            general(count_distribution_distance(spec.risk, *cfg.compare, spec.sample_size))});
    section(os, "marginal equivalence", eq, format);
  }

  const auto data = simulate_repeated(spec);
  write_outcomes(os, data, false, format, d);

  if (spec.repeats >= 2 && spec.sample_size >= 2) {
    const auto ct = clustering_test(data);
    const auto icc = icc_estimate(data);
    TextTable t;
    t.header = {"statistic", "df", "p_value", "permutation_p", "defined", "icc", "icc_defined"};
    t.add({general(ct.statistic), general(ct.df), general(ct.p_value),
           ct.permutation_p ? general(*ct.permutation_p) : "NA", ct.defined ? "true" : "false",
           icc.defined ? format_fixed(icc.estimate, d) : "NA", icc.defined ? "true" : "false"});
    section(os, "clustering test", t, format);

    if (a.reps > 0) {
      std::int64_t rejections = 0;
      std::int64_t undefined = 0;
      double icc_sum = 0.0;
      std::int64_t icc_count = 0;
      ClusteringOptions no_perm;
      no_perm.permutations = 0;
      for (std::int64_t r = 0; r < a.reps; ++r) {
        ScenarioSpec rep = spec;
        rep.seed = seed + static_cast<std::uint64_t>(r);
        const auto sim = simulate_repeated(rep);
        const auto res = clustering_test(sim, no_perm);
        if (!res.defined) ++undefined;
        if (res.defined && res.p_value < a.alpha) ++rejections;
        if (const auto ie = icc_estimate(sim); ie.defined) {
          icc_sum += ie.estimate;
          ++icc_count;
        }
      }
      TextTable mc;
      mc.header = {"reps", "alpha", "rejections", "rejection_rate", "undefined", "mean_icc"};
      mc.add({std::to_string(a.reps), general(a.alpha), std::to_string(rejections),
              format_fixed(static_cast<double>(rejections) / static_cast<double>(a.reps), d),
              std::to_string(undefined),
              icc_count ? format_fixed(icc_sum / static_cast<double>(icc_count), d) : "NA"});
      section(os, "monte carlo over seeds seed..seed+reps-1", mc, format);
    }
  }
  return kSuccess;
}

int cmd_simulate(const SimulateArgs& a, std::ostream& os, const Environment& env) {
  const auto format = parse_table_format(a.out.format);
  const auto cfg = read_simulation_config(a.config);
  const auto seed = resolve_seed(a, cfg, env);

  RunManifest m{"simulate", {a.config}, {}, seed, manifest_timestamp(env)};
  if (cfg.model == SimulationModel::threshold) {
    const auto& t = cfg.threshold;
    m.parameters.insert(m.parameters.end(), {{"model", "threshold"},
                                              {"threshold_location", general(t.mean_threshold.location)},
                                              {"threshold_spread", general(t.mean_threshold.spread)},
                                              {"fluctuation_sd", general(t.threshold_fluctuation_sd)},
                                              {"provocation_rate", general(t.provocation_rate)},
                                              {"strength_location", general(t.provocation_strength.location)},
                                              {"strength_spread", general(t.provocation_strength.spread)},
                                              {"follow_up", general(t.follow_up)}});
  } else {
    m.parameters.emplace_back("model", "repeated");
    m.parameters.emplace_back("risk", "'" + describe(cfg.scenario.risk) + "'");
    if (cfg.compare) m.parameters.emplace_back("compare", "'" + describe(*cfg.compare) + "'");
    m.parameters.emplace_back("repeats", std::to_string(cfg.scenario.repeats));
    m.parameters.emplace_back("reps", std::to_string(a.reps));
    m.parameters.emplace_back("alpha", general(a.alpha));
  }
  m.parameters.emplace_back("n", std::to_string(cfg.scenario.sample_size));
  add_output_parameters(m, a.out);
  m.write(os);

  if (cfg.model == SimulationModel::threshold) return simulate_threshold(cfg, seed, os, format, a.out.digits);
  return simulate_repeated_design(a, cfg, seed, os, format, a.out.digits);
}

// ---------------------------------------------------------------------------

struct RefutedArgs {
  std::string mode;
  std::optional<double> theta;
  double alpha = 0.05;
  std::optional<double> beta0, beta1, sigma, xbar, ssx, xnew;
  std::optional<std::int64_t> n, df;
  OutputOptions out;
};

int cmd_refuted(const RefutedArgs& a, std::ostream& os, const Environment& env) {
  const auto format = parse_table_format(a.out.format);
  const int d = a.out.digits;
  RunManifest m{"refuted", {}, {{"mode", a.mode}, {"alpha", general(a.alpha)}}, std::nullopt, manifest_timestamp(env)};

  TextTable t;
  t.header = {"mode", "point", "lower", "upper", "level", "method", "valid"};
  std::string note;
  if (a.mode == "hmc") {
    if (!a.theta) throw InputError("--mode hmc requires --theta");
    m.parameters.emplace_back("theta", general(*a.theta));
    const auto iv = hmc_individual_interval(*a.theta, a.alpha);
    t.add({a.mode, format_fixed(iv.point, d), format_fixed(iv.lower, d), format_fixed(iv.upper, d),
           general(iv.level), std::string(to_string(iv.method)), "false"});
    note = iv.note;
  } else {
    const auto need = [](const auto& opt, const char* flag) {
      if (!opt) throw InputError(std::string("--mode cm1 requires ") + flag + " (no default exists)");
      return *opt;
    };
    CM1PseudoInput in;
    in.beta0 = need(a.beta0, "--beta0");
    in.beta1 = need(a.beta1, "--beta1");
    in.sigma_hat = need(a.sigma, "--sigma");
    in.n = need(a.n, "--n");
    in.x_bar = need(a.xbar, "--xbar");
    in.ss_x = need(a.ssx, "--ssx");
    in.x_new = need(a.xnew, "--xnew");
    in.alpha = a.alpha;
    in.df = a.df;
    m.parameters.insert(m.parameters.end(), {{"beta0", general(in.beta0)},
                                              {"beta1", general(in.beta1)},
                                              {"sigma", general(in.sigma_hat)},
                                              {"n", std::to_string(in.n)},
                                              {"xbar", general(in.x_bar)},
                                              {"ssx", general(in.ss_x)},
                                              {"xnew", general(in.x_new)},
                                              {"df", std::to_string(in.df.value_or(in.n - 2))}});
    const auto iv = cm1_pseudo_interval(in);
    const auto [zlo, zhi] = cm1_linear_bounds(in);
    t.header.insert(t.header.end(), {"linear_lower", "linear_upper"});
    t.add({a.mode, format_fixed(iv.point, d), format_fixed(iv.lower, d), format_fixed(iv.upper, d),
           general(iv.level), std::string(to_string(iv.method)), "false", format_fixed(zlo, d),
           format_fixed(zhi, d)});
    note = iv.note;
  }
  add_output_parameters(m, a.out);

  m.write(os);
  os << "#\n";
  for (const auto line : kRefutationBanner) os << "# " << line << '\n';
  os << "# note: " << note << '\n';
  section(os, "refuted interval", t, format);
  return kSuccess;
}

}  // namespace

Environment Environment::from_process() {
  Environment env;
  if (const char* s = std::getenv("RISKBOUNDS_SEED")) env.seed = s;
  if (const char* t = std::getenv("SOURCE_DATE_EPOCH")) env.timestamp = t;
  return env;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env) {
  CLI::App app{"Group-risk intervals, coverage analysis and identifiability simulations"};
  app.name("riskbounds");
  app.require_subcommand(1);
  app.set_version_flag("--version", RISKBOUNDS_VERSION);

  WilsonArgs wa;
  auto* wilson = app.add_subcommand("wilson", "Wilson score intervals per stratum or for fictitious samples");
  wilson->add_option("table", wa.table, "category CSV (category,total,events)");
  wilson->add_option("--alpha", wa.alpha, "significance level")->check(CLI::Range(1e-12, 1.0 - 1e-12))
      ->capture_default_str();
  wilson->add_flag("--per-row", wa.per_row, "one interval per stratum (default with a table)");
  wilson->add_option("--fictitious", wa.fictitious, "THETA N-LIST, e.g. 0.13 167,50,10,5,1")->expected(2);
  wilson->add_flag("--percent", wa.percent, "print proportions as percentages");
  add_output_options(wilson, wa.out);

  FitArgs fa;
  std::string alpha_list = "0.05";
  auto* fit = app.add_subcommand("fit", "Grouped logistic regression with group-risk intervals");
  fit->add_option("table", fa.table, "category CSV")->required();
  fit->add_option("--alpha", alpha_list, "comma-separated significance levels")->capture_default_str();
  fit->add_option("--expand", fa.expand, "replicate every person k times")->check(CLI::PositiveNumber)
      ->capture_default_str();
  fit->add_option("--figure", fa.figure, "write category,observed,fitted,lower,upper CSV here");
  fit->add_option("--figure-alpha", fa.figure_alpha, "significance level for the figure bounds")
      ->check(CLI::Range(1e-12, 1.0 - 1e-12))
      ->capture_default_str();
  add_output_options(fit, fa.out);

  CoverageArgs ca;
  auto* coverage = app.add_subcommand("coverage", "Exact coverage of the Wilson interval");
  coverage->add_option("--n", ca.n, "number of trials")->required()->check(CLI::PositiveNumber);
  coverage->add_option("--p", ca.p, "true probability")->required()->check(CLI::Range(0.0, 1.0));
  coverage->add_option("--level", ca.level, "nominal confidence level")->check(CLI::Range(1e-12, 1.0 - 1e-12))
      ->capture_default_str();
  add_output_options(coverage, ca.out);

  SimulateArgs sa;
  auto* simulate = app.add_subcommand("simulate", "Identifiability scenarios and threshold-model cohorts");
  simulate->add_option("config", sa.config, "key = value scenario file")->required();
  simulate->add_option("--seed", sa.seed, "overrides the config seed and RISKBOUNDS_SEED");
  simulate->add_option("--reps", sa.reps, "Monte Carlo replicates for rejection rates")->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  simulate->add_option("--alpha", sa.alpha, "test level for rejection rates")->check(CLI::Range(1e-12, 1.0 - 1e-12))
      ->capture_default_str();
  add_output_options(simulate, sa.out);

  RefutedArgs ra;
  auto* refuted = app.add_subcommand("refuted", "Reproduce refuted individual-risk intervals (always invalid)");
  refuted->add_option("--mode", ra.mode, "hmc or cm1")->required()->check(CLI::IsMember({"hmc", "cm1"}));
  refuted->add_option("--theta", ra.theta, "observed proportion (hmc)");
  refuted->add_option("--alpha", ra.alpha, "significance level")->check(CLI::Range(1e-12, 1.0 - 1e-12))
      ->capture_default_str();
  refuted->add_option("--beta0", ra.beta0, "intercept (cm1)");
  refuted->add_option("--beta1", ra.beta1, "slope (cm1)");
  refuted->add_option("--sigma", ra.sigma, "claimed residual SD (cm1, required)");
  refuted->add_option("--n", ra.n, "sample size (cm1)");
  refuted->add_option("--xbar", ra.xbar, "predictor mean (cm1)");
  refuted->add_option("--ssx", ra.ssx, "corrected sum of squares of the predictor (cm1)");
  refuted->add_option("--xnew", ra.xnew, "target score (cm1)");
  refuted->add_option("--df", ra.df, "t degrees of freedom (cm1, default n-2)");
  add_output_options(refuted, ra.out);

  std::vector<const char*> argv;
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (*wilson) return cmd_wilson(wa, out, env);
    if (*fit) {
      fa.alphas.clear();
      for (const auto& s : split_list(alpha_list)) {
        const double alpha = to_double(s);
        if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0, 1): " + s);
        fa.alphas.push_back(alpha);
      }
      if (fa.alphas.empty()) throw InputError("--alpha needs at least one value");
      return cmd_fit(fa, out, env);
    }
    if (*coverage) return cmd_coverage(ca, out, env);
    if (*simulate) return cmd_simulate(sa, out, env);
    if (*refuted) return cmd_refuted(ra, out, env);
  } catch (const InputError& e) {
    err << "riskbounds: error: " << e.what() << '\n';
    return kInputError;
  } catch (const NumericalError& e) {
    err << "riskbounds: numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kInputError;
}

}  // namespace riskbounds::cli
