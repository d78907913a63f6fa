#include "riskbounds/scenario_config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "riskbounds/types.hpp"

namespace riskbounds {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string> words(std::string_view s) {
  std::istringstream is{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

double to_double(std::string_view s, std::string_view key) {
  try {
    std::size_t used = 0;
    const std::string str(s);
    const double v = std::stod(str, &used);
    if (used == str.size()) return v;
  } catch (const std::exception&) {
  }
  throw InputError("'" + std::string(key) + "': not a number: '" + std::string(s) + "'");
}

template <typename Int>
Int to_integer(std::string_view s, std::string_view key) {
  Int v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw InputError("'" + std::string(key) + "': not an integer: '" + std::string(s) + "'");
  return v;
}

}  // namespace

RiskDistribution parse_risk_distribution(std::string_view text) {
  const auto w = words(text);
  if (w.empty()) throw InputError("empty risk distribution");
  const auto expect = [&](std::size_t count) {
    if (w.size() != count + 1)
      throw InputError("'" + w[0] + "' takes " + std::to_string(count) + " parameter(s)");
  };
  RiskDistribution dist;
  if (w[0] == "point") {
    expect(1);
    dist = PointRisk{to_double(w[1], "point")};
  } else if (w[0] == "two_point") {
    expect(3);
    dist = TwoPointRisk{to_double(w[1], "two_point"), to_double(w[2], "two_point"), to_double(w[3], "two_point")};
  } else if (w[0] == "beta") {
    expect(2);
    dist = BetaRisk{to_double(w[1], "beta"), to_double(w[2], "beta")};
  } else {
    throw InputError("unknown risk distribution '" + w[0] + "' (point, two_point, beta)");
  }
  validate(dist);
  return dist;
}

SimulationConfig parse_simulation_config(std::string_view text) {
  SimulationConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    auto line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    try {
      if (key == "model") {
        if (value == "repeated") cfg.model = SimulationModel::repeated;
        else if (value == "threshold") cfg.model = SimulationModel::threshold;
        else throw InputError("model must be 'repeated' or 'threshold'");
      } else if (key == "risk") {
        cfg.scenario.risk = parse_risk_distribution(value);
      } else if (key == "compare") {
        cfg.compare = parse_risk_distribution(value);
      } else if (key == "n") {
        cfg.scenario.sample_size = to_integer<std::int64_t>(value, key);
      } else if (key == "repeats") {
        cfg.scenario.repeats = to_integer<std::int64_t>(value, key);
      } else if (key == "seed") {
        cfg.seed = to_integer<std::uint64_t>(value, key);
      } else if (key == "threshold_location") {
        cfg.threshold.mean_threshold.location = to_double(value, key);
      } else if (key == "threshold_spread") {
        cfg.threshold.mean_threshold.spread = to_double(value, key);
      } else if (key == "fluctuation_sd") {
        cfg.threshold.threshold_fluctuation_sd = to_double(value, key);
      } else if (key == "provocation_rate") {
        cfg.threshold.provocation_rate = to_double(value, key);
      } else if (key == "strength_location") {
        cfg.threshold.provocation_strength.location = to_double(value, key);
      } else if (key == "strength_spread") {
        cfg.threshold.provocation_strength.spread = to_double(value, key);
      } else if (key == "follow_up") {
        cfg.threshold.follow_up = to_double(value, key);
      } else {
        throw InputError("unknown key '" + std::string(key) + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (cfg.scenario.sample_size < 1) throw ValidationError("n must be positive");
  if (cfg.scenario.repeats < 1) throw ValidationError("repeats must be positive");
  if (cfg.model == SimulationModel::threshold) validate(cfg.threshold);
  if (cfg.seed) cfg.scenario.seed = *cfg.seed;
  return cfg;
}

SimulationConfig read_simulation_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_simulation_config(buf.str());
}

}  // namespace riskbounds
