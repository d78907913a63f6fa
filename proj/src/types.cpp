#include "riskbounds/types.hpp"

namespace riskbounds {

std::string_view to_string(IntervalMethod m) {
  switch (m) {
    case IntervalMethod::wilson: return "wilson";
    case IntervalMethod::wald: return "wald";
    case IntervalMethod::logistic_delta: return "logistic_delta";
    case IntervalMethod::fictitious_wilson: return "fictitious_wilson";
    case IntervalMethod::cm1_pseudo: return "cm1_pseudo";
  }
  return "unknown";
}

IntervalEstimate make_interval(double point, double lower, double upper, double level,
                               IntervalMethod method, std::string note) {
  if (!(0.0 <= lower && lower <= upper && upper <= 1.0))
    throw NumericalError("interval bounds out of order or outside [0, 1]");
  const bool valid = !is_refuted(method);
  if (valid && !(lower <= point && point <= upper))
    throw NumericalError("point estimate lies outside its interval");
  return {point, lower, upper, level, method, valid, std::move(note)};
}

}  // namespace riskbounds
