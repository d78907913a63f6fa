#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "riskbounds/identifiability.hpp"
#include "riskbounds/threshold_model.hpp"

namespace riskbounds {

enum class SimulationModel { repeated, threshold };

/// Parsed simulation config.
///
/// The file is `key = value` lines; `#` starts a comment. Keys:
///
///     model = repeated | threshold
///     risk = point P | two_point P1 W1 P2 | beta A B
///     compare = <same forms as risk>        (optional second scenario)
///     n = 10
///     repeats = 5
///     seed = 42
///     threshold_location, threshold_spread, fluctuation_sd,
///     provocation_rate, strength_location, strength_spread, follow_up
struct SimulationConfig {
  SimulationModel model = SimulationModel::repeated;
  ScenarioSpec scenario;
  std::optional<RiskDistribution> compare;
  ThresholdModelSpec threshold;
  std::optional<std::uint64_t> seed;
};

RiskDistribution parse_risk_distribution(std::string_view text);
SimulationConfig parse_simulation_config(std::string_view text);
SimulationConfig read_simulation_config(const std::string& path);

}  // namespace riskbounds
