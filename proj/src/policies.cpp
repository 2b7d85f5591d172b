#include "cssim/policies.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

namespace cssim {

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::pseudo_random: return "pseudo_random";
    case PolicyKind::uniform: return "uniform";
    case PolicyKind::qlearning: return "qlearning";
  }
  return "pseudo_random";
}

PolicyKind parse_policy_kind(std::string_view text) {
  if (text == "pseudo_random") return PolicyKind::pseudo_random;
  if (text == "uniform") return PolicyKind::uniform;
  if (text == "qlearning") return PolicyKind::qlearning;
  throw std::invalid_argument(
      fmt::format("unknown policy '{}' (expected pseudo_random, uniform or qlearning)", text));
}

void PolicyConfig::validate() const {
  auto probability = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!probability(pseudo_random.epsilon_n)) throw std::invalid_argument("epsilon_n must lie in [0, 1]");
  if (!(qlearning.learning_rate > 0.0 && qlearning.learning_rate <= 1.0)) {
    throw std::invalid_argument("q_learning_rate must lie in (0, 1]");
  }
  if (!(qlearning.discount >= 0.0 && qlearning.discount < 1.0)) throw std::invalid_argument("q_discount must lie in [0, 1)");
  if (!probability(qlearning.exploration)) throw std::invalid_argument("q_exploration must lie in [0, 1]");
}

std::size_t choose_action_pseudo_random(const PolicyInput& input, const PseudoRandomParams& params, Rng& rng) {
  if (input.own_observation == Occupancy::occupied) return input.own_action;

  if (rng.uniform01() < params.epsilon_n && !input.neighbors.empty()) {
    if (params.prefer_occupied_neighbors) {
      std::vector<std::size_t> jammed;
      for (const auto& report : input.neighbors) {
        if (report.observation == Occupancy::occupied) jammed.push_back(report.channel);
      }
      if (!jammed.empty()) return jammed[rng.uniform_index(jammed.size())];
    }
    return input.neighbors[rng.uniform_index(input.neighbors.size())].channel;
  }

  std::vector<bool> excluded(input.n_channels, false);
  excluded[input.own_action] = true;
  for (const auto& report : input.neighbors) excluded[report.channel] = true;
  std::vector<std::size_t> unexplored;
  for (std::size_t c = 0; c < input.n_channels; ++c) {
    if (!excluded[c]) unexplored.push_back(c);
  }
  if (unexplored.empty()) {
    for (std::size_t c = 0; c < input.n_channels; ++c) {
      if (c != input.own_action) unexplored.push_back(c);
    }
  }
  if (unexplored.empty()) return input.own_action;  // single channel
  return unexplored[rng.uniform_index(unexplored.size())];
}

std::size_t choose_action_uniform(const PolicyInput& input, Rng& rng) { return rng.uniform_index(input.n_channels); }

QTable::QTable(std::size_t n_nodes, std::size_t n_channels)
    : n_nodes_(n_nodes), n_channels_(n_channels), values_(n_nodes * n_channels, 0.0) {}

std::span<const double> QTable::row(std::size_t node) const {
  if (node >= n_nodes_) throw std::out_of_range("q table: node out of range");
  return std::span<const double>(values_).subspan(node * n_channels_, n_channels_);
}

std::size_t QTable::greedy_action(std::size_t node) const {
  const auto values = row(node);
  return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
}

std::size_t QTable::index(std::size_t node, std::size_t channel) const {
  if (node >= n_nodes_ || channel >= n_channels_) throw std::out_of_range("q table index out of range");
  return node * n_channels_ + channel;
}

std::size_t choose_action_qlearning(const PolicyInput& input, std::size_t node, const QTable& table,
                                    const QLearningParams& params, Rng& rng) {
  if (rng.uniform01() < params.exploration) return rng.uniform_index(input.n_channels);
  return table.greedy_action(node);
}

void update_q(QTable& table, std::size_t node, std::size_t action, double reward, const QLearningParams& params) {
  const auto values = table.row(node);
  const double best = *std::max_element(values.begin(), values.end());
  double& q = table.value(node, action);
  q += params.learning_rate * (reward + params.discount * best - q);
}

void learn_from_step(QTable& table, std::size_t node, const PolicyInput& input, const QLearningParams& params) {
  auto reward = [](Occupancy o) { return o == Occupancy::occupied ? 1.0 : 0.0; };
  update_q(table, node, input.own_action, reward(input.own_observation), params);
  for (const auto& report : input.neighbors) update_q(table, node, report.channel, reward(report.observation), params);
}

}  // namespace cssim
