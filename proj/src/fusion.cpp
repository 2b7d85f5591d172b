#include "cssim/fusion.hpp"

#include <stdexcept>

namespace cssim {

char belief_code(Belief belief) {
  switch (belief) {
    case Belief::unknown: return 'U';
    case Belief::vacant: return 'V';
    case Belief::occupied: return 'O';
  }
  return 'U';
}

std::string BeliefVector::codes() const {
  std::string out;
  out.reserve(beliefs.size());
  for (Belief b : beliefs) out.push_back(belief_code(b));
  return out;
}

DecisionVector fuse_observations(std::size_t n_channels, const Observation& own, std::span<const Observation> shared) {
  DecisionVector d;
  d.owner = own.node;
  d.time = own.time;
  d.beliefs.assign(n_channels, Belief::unknown);
  auto merge = [&](const Observation& obs) {
    if (obs.time != own.time) throw std::invalid_argument("fuse_observations: observations from different steps");
    if (obs.channel >= n_channels) throw std::invalid_argument("fuse_observations: channel out of range");
    d.beliefs[obs.channel] = fuse(d.beliefs[obs.channel], to_belief(obs.verdict));
  };
  merge(own);
  for (const auto& obs : shared) merge(obs);
  return d;
}

SuperDecisionVector fuse_decisions(const DecisionVector& own, std::span<const DecisionVector> neighbor_vectors) {
  SuperDecisionVector delta;
  delta.owner = own.owner;
  delta.time = own.time;
  delta.beliefs = own.beliefs;
  for (const auto& other : neighbor_vectors) {
    if (other.size() != own.size()) throw std::invalid_argument("fuse_decisions: vector length mismatch");
    if (other.time != own.time) throw std::invalid_argument("fuse_decisions: vectors from different steps");
    for (std::size_t c = 0; c < delta.beliefs.size(); ++c) delta.beliefs[c] = fuse(delta.beliefs[c], other.beliefs[c]);
  }
  return delta;
}

std::vector<std::size_t> candidate_channels(const BeliefVector& vector) {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < vector.beliefs.size(); ++c) {
    if (vector.beliefs[c] == Belief::vacant) out.push_back(c);
  }
  return out;
}

}  // namespace cssim
