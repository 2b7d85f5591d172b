#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace cssim {

/// One step of the SplitMix64 generator: advances `state` by the golden-ratio
/// increment and returns the mixed output.
std::uint64_t splitmix64_next(std::uint64_t& state);

/// Seed of replication `index` under base seed `seed`: the (index + 1)-th
/// output of a SplitMix64 generator seeded with `seed`.
std::uint64_t replication_seed(std::uint64_t seed, std::uint64_t index);

/// Named substreams of one run. Each (stream, index) pair is keyed by
/// replication_seed(replication_seed(run_seed, stream), index).
enum class Stream : std::uint64_t {
  jammer = 1,          // one per channel
  initial_action = 2,  // one per node
  sensing = 3,         // one per channel (shared verdicts) or node
  policy = 4,          // one per node
  transmit = 5,        // one per node
};

std::uint64_t substream_seed(std::uint64_t run_seed, Stream stream, std::uint64_t index);

/// xoshiro256** seeded from four consecutive SplitMix64 outputs.
///
/// The whole sampling contract is pinned here so that traces are reproducible
/// across standard libraries (std distributions are implementation-defined):
///   uniform01()        = (next() >> 11) * 2^-53
///   uniform_index(n)   = Lemire multiply-shift with rejection
///   bernoulli(p)       = uniform01() < p
///   uniform(lo, hi)    = lo + (hi - lo) * uniform01()
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0);
  Rng(std::uint64_t run_seed, Stream stream, std::uint64_t index)
      : Rng(substream_seed(run_seed, stream, index)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type next();
  result_type operator()() { return next(); }

  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  bool bernoulli(double p) { return uniform01() < p; }
  /// Uniform on {0, ..., n - 1}; n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);

 private:
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace cssim
