#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace riskbounds {

/// Bad input: malformed files, invalid arguments, violated preconditions.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public InputError {
 public:
  using InputError::InputError;
};

/// The numbers were fine but the computation could not produce an answer.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class IntervalMethod { wilson, wald, logistic_delta, fictitious_wilson, cm1_pseudo };

std::string_view to_string(IntervalMethod m);

/// True for constructions that have no coverage interpretation.
constexpr bool is_refuted(IntervalMethod m) {
  return m == IntervalMethod::fictitious_wilson || m == IntervalMethod::cm1_pseudo;
}

/// A point estimate with bounds on the probability scale.
///
/// `valid` is false exactly for the refuted methods; `note` then carries a
/// short machine-readable reason.
struct IntervalEstimate {
  double point = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
  IntervalMethod method = IntervalMethod::wilson;
  bool valid = true;
  std::string note;

  double width() const { return upper - lower; }
  bool contains(double p) const { return lower <= p && p <= upper; }
};

/// Builds an estimate and enforces the ordering and validity invariants.
IntervalEstimate make_interval(double point, double lower, double upper, double level,
                               IntervalMethod method, std::string note = {});

}  // namespace riskbounds
