#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "cssim/rng.hpp"

namespace cssim {

enum class JammerState : std::uint8_t { idle = 0, active = 1 };

/// Ground-truth occupancy of one channel.
enum class Occupancy : std::uint8_t { vacant = 0, occupied = 1 };

using SpectrumTruth = std::vector<Occupancy>;

/// Two-state Markov jammer bound to one channel.
struct JammerChain {
  double p00 = 0.9;  // stay idle
  double p11 = 0.9;  // stay active
  JammerState state = JammerState::idle;

  double p01() const { return 1.0 - p00; }
  double p10() const { return 1.0 - p11; }

  bool operator==(const JammerChain&) const = default;
};

struct PersistenceBounds {
  double lo = 0.85;
  double hi = 0.98;

  /// Throws std::invalid_argument unless 0 <= lo <= hi <= 1.
  void validate() const;

  bool operator==(const PersistenceBounds&) const = default;
};

/// How the initial jammer states are chosen. `random` is Bernoulli(0.5).
enum class InitialJammerState { random, idle, active };

std::string_view to_string(InitialJammerState mode);
InitialJammerState parse_initial_jammer_state(std::string_view text);

/// Draws p00, p11 uniformly in `bounds` (in that order), then the initial
/// state, all from `rng`.
JammerChain init_chain(const PersistenceBounds& bounds, Rng& rng,
                       InitialJammerState initial = InitialJammerState::random);

/// Chain k draws from Rng(run_seed, Stream::jammer, k), so the first channels'
/// chains do not depend on how many channels there are.
std::vector<JammerChain> init_chains(std::size_t n_channels, const PersistenceBounds& bounds,
                                     std::uint64_t run_seed,
                                     InitialJammerState initial = InitialJammerState::random);

/// One Markov transition. The chain is not modified.
JammerState step(const JammerChain& chain, Rng& rng);

SpectrumTruth truth_snapshot(std::span<const JammerChain> chains);

/// The per-channel jammers of one run together with their private streams.
class JammerBank {
 public:
  JammerBank(std::size_t n_channels, const PersistenceBounds& bounds, std::uint64_t run_seed,
             InitialJammerState initial = InitialJammerState::random);

  /// Advances every chain by one time step.
  void advance();
  SpectrumTruth truth() const { return truth_snapshot(chains_); }
  const std::vector<JammerChain>& chains() const { return chains_; }

 private:
  std::vector<JammerChain> chains_;
  std::vector<Rng> streams_;
};

}  // namespace cssim
