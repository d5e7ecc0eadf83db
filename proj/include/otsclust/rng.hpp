#pragma once

// Seedable, splittable 64-bit generator with inversion-based samplers.
// The generator family is fixed (xoshiro256++ seeded through splitmix64)
// so that identical seeds reproduce bit-identical streams on every
// platform; std::*_distribution is avoided for the same reason.

#include <cstdint>
#include <span>

namespace otsclust {

class Rng {
public:
  explicit Rng(std::uint64_t seed);

  /// Independent stream for (seed, stream_index); used to give each
  /// series / trial / restart its own generator.
  static Rng derive(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double();

  /// Uniform integer in [0, bound), bound >= 1. Rejection sampling.
  std::uint64_t uniform_int(std::uint64_t bound);

  /// Bin(n, p) by CDF inversion; intended for small n (<= 64).
  int binomial(int n, double p);

  /// Standard logistic variate, log(u / (1 - u)).
  double logistic();

  /// Index draw from nonnegative weights summing to ~1, by inversion.
  int categorical(std::span<const double> weights);

private:
  std::uint64_t state_[4];
};

}  // namespace otsclust
