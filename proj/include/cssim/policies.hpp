#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "cssim/jammer_model.hpp"
#include "cssim/rng.hpp"

namespace cssim {

enum class PolicyKind { pseudo_random, uniform, qlearning };

std::string_view to_string(PolicyKind kind);
PolicyKind parse_policy_kind(std::string_view text);

struct PseudoRandomParams {
  /// Probability of copying a neighbour's action after a vacant observation.
  double epsilon_n = 0.1;
  /// Copy only neighbours that observed a jammer, when there are any.
  bool prefer_occupied_neighbors = false;

  bool operator==(const PseudoRandomParams&) const = default;
};

/// Stateless multi-agent Q-learning baseline (per-node action values, reward 1
/// for a detected jammer, rewards shared with neighbours). This is a
/// reconstruction of the comparison scheme, not a faithful reimplementation.
struct QLearningParams {
  double learning_rate = 0.1;
  double discount = 0.0;
  double exploration = 0.1;

  bool operator==(const QLearningParams&) const = default;
};

struct PolicyConfig {
  PolicyKind kind = PolicyKind::pseudo_random;
  PseudoRandomParams pseudo_random;
  QLearningParams qlearning;

  /// Throws std::invalid_argument when a probability leaves [0, 1], the
  /// learning rate leaves (0, 1] or the discount leaves [0, 1).
  void validate() const;

  bool operator==(const PolicyConfig&) const = default;
};

/// Action and observation a neighbour shared during the collaboration sub-slot.
struct NeighborReport {
  std::size_t node = 0;
  std::size_t channel = 0;
  Occupancy observation = Occupancy::vacant;
};

struct PolicyInput {
  std::size_t own_action = 0;
  Occupancy own_observation = Occupancy::vacant;
  std::span<const NeighborReport> neighbors;
  std::size_t n_channels = 1;
};

/// Keep sensing a channel found occupied; otherwise, with probability
/// epsilon_n, join a uniformly chosen neighbour's channel; otherwise pick
/// uniformly among channels sensed by neither this node nor its neighbours
/// (all channels except the own one if that set is empty).
std::size_t choose_action_pseudo_random(const PolicyInput& input, const PseudoRandomParams& params, Rng& rng);

std::size_t choose_action_uniform(const PolicyInput& input, Rng& rng);

class QTable {
 public:
  QTable(std::size_t n_nodes, std::size_t n_channels);

  std::size_t n_nodes() const { return n_nodes_; }
  std::size_t n_channels() const { return n_channels_; }
  double value(std::size_t node, std::size_t channel) const { return values_.at(index(node, channel)); }
  double& value(std::size_t node, std::size_t channel) { return values_.at(index(node, channel)); }
  std::span<const double> row(std::size_t node) const;
  /// Lowest channel index among the maxima of the node's row.
  std::size_t greedy_action(std::size_t node) const;

 private:
  std::size_t index(std::size_t node, std::size_t channel) const;

  std::size_t n_nodes_;
  std::size_t n_channels_;
  std::vector<double> values_;
};

/// Epsilon-greedy over the node's action values. One uniform draw is always
/// consumed for the exploration test.
std::size_t choose_action_qlearning(const PolicyInput& input, std::size_t node, const QTable& table,
                                    const QLearningParams& params, Rng& rng);

/// Q <- Q + alpha * (reward + discount * max Q - Q) on one (node, action) entry.
void update_q(QTable& table, std::size_t node, std::size_t action, double reward, const QLearningParams& params);

/// Rewards the node's own action and each neighbour's action with 1 if the
/// corresponding observation was occupied, 0 otherwise.
void learn_from_step(QTable& table, std::size_t node, const PolicyInput& input, const QLearningParams& params);

}  // namespace cssim
