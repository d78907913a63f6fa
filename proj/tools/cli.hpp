#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace riskbounds::cli {

enum ExitCode : int { kSuccess = 0, kInputError = 2, kNumericalFailure = 3 };

/// Process-level inputs the CLI would otherwise read from the environment.
struct Environment {
  std::optional<std::string> seed;       ///< RISKBOUNDS_SEED
  std::optional<std::string> timestamp;  ///< fixed manifest timestamp

  /// Reads RISKBOUNDS_SEED, and SOURCE_DATE_EPOCH for the timestamp.
  static Environment from_process();
};

/// Runs the tool with `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env);

}  // namespace riskbounds::cli
