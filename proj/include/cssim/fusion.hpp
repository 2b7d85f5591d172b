#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cssim/jammer_model.hpp"

namespace cssim {

/// Per-channel belief. Ordered as a join semilattice: unknown < vacant < occupied,
/// so OR fusion is the element-wise maximum.
enum class Belief : std::uint8_t { unknown = 0, vacant = 1, occupied = 2 };

inline Belief fuse(Belief a, Belief b) { return a < b ? b : a; }
inline Belief to_belief(Occupancy verdict) {
  return verdict == Occupancy::occupied ? Belief::occupied : Belief::vacant;
}
/// 'U', 'V' or 'O'.
char belief_code(Belief belief);

/// A node's sensing outcome for one step.
struct Observation {
  std::size_t node = 0;
  std::size_t channel = 0;
  Occupancy verdict = Occupancy::vacant;
  long time = 0;
};

struct BeliefVector {
  std::size_t owner = 0;
  long time = 0;
  std::vector<Belief> beliefs;

  std::size_t size() const { return beliefs.size(); }
  /// One belief_code per channel.
  std::string codes() const;

  bool operator==(const BeliefVector&) const = default;
};

/// OR fusion of a node's own observation with those shared by its neighbours.
struct DecisionVector : BeliefVector {};

/// OR fusion of a node's decision vector with its neighbours' decision vectors.
struct SuperDecisionVector : BeliefVector {};

/// Channels nobody observed stay unknown. Throws std::invalid_argument when
/// observations come from different steps or name a channel >= n_channels.
DecisionVector fuse_observations(std::size_t n_channels, const Observation& own, std::span<const Observation> shared);

/// Throws std::invalid_argument on mismatched lengths or steps.
SuperDecisionVector fuse_decisions(const DecisionVector& own, std::span<const DecisionVector> neighbor_vectors);

/// Channels believed vacant, ascending. Empty means the node does not transmit.
std::vector<std::size_t> candidate_channels(const BeliefVector& vector);

}  // namespace cssim
