#pragma once

#include <cstdint>
#include <limits>

namespace stablam {

/// xoshiro256** seeded through SplitMix64.
///
/// The generator is fixed (rather than std::mt19937 + std distributions)
/// because the standard distributions are implementation-defined and we want
/// identical draws on every platform. Per-trial streams are derived with
/// Rng::stream(seed, index), which hashes the pair through SplitMix64.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0);

  static Rng stream(std::uint64_t seed, std::uint64_t index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next(); }

  std::uint64_t next();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1].
  double uniform_pos();
  /// Standard normal (Box-Muller, second variate cached).
  double normal();
  /// Exp(1).
  double exponential();

 private:
  std::uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace stablam
