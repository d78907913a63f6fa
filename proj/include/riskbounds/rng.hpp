#pragma once

#include <cstdint>
#include <limits>
#include <span>

namespace riskbounds {

/// SplitMix64 finalizer; used to derive stream seeds.
std::uint64_t mix64(std::uint64_t x);

/// xoshiro256** with substreams derived from (seed, stream id).
///
/// Every sampler below is written out explicitly so that draws are
/// bit-identical across standard libraries; the <random> distributions are
/// implementation-defined.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  bool bernoulli(double p);
  /// Uniform integer in [0, bound) without modulo bias.
  std::uint64_t below(std::uint64_t bound);
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }
  std::uint64_t poisson(double mean);
  double gamma(double shape);
  double beta(double a, double b);

  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::uint64_t s_[4];
};

}  // namespace riskbounds
