#include "cssim/jammer_model.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace cssim {

void PersistenceBounds::validate() const {
  if (!(lo >= 0.0 && lo <= hi && hi <= 1.0)) {
    throw std::invalid_argument(fmt::format("jammer persistence bounds [{}, {}] must satisfy 0 <= lo <= hi <= 1", lo, hi));
  }
}

std::string_view to_string(InitialJammerState mode) {
  switch (mode) {
    case InitialJammerState::random: return "random";
    case InitialJammerState::idle: return "idle";
    case InitialJammerState::active: return "active";
  }
  return "random";
}

InitialJammerState parse_initial_jammer_state(std::string_view text) {
  if (text == "random") return InitialJammerState::random;
  if (text == "idle") return InitialJammerState::idle;
  if (text == "active") return InitialJammerState::active;
  throw std::invalid_argument(fmt::format("unknown initial jammer state '{}' (expected random, idle or active)", text));
}

JammerChain init_chain(const PersistenceBounds& bounds, Rng& rng, InitialJammerState initial) {
  JammerChain chain;
  chain.p00 = rng.uniform(bounds.lo, bounds.hi);
  chain.p11 = rng.uniform(bounds.lo, bounds.hi);
  const bool active = rng.bernoulli(0.5);  // drawn in every mode to keep the stream aligned
  switch (initial) {
    case InitialJammerState::random: chain.state = active ? JammerState::active : JammerState::idle; break;
    case InitialJammerState::idle: chain.state = JammerState::idle; break;
    case InitialJammerState::active: chain.state = JammerState::active; break;
  }
  return chain;
}

std::vector<JammerChain> init_chains(std::size_t n_channels, const PersistenceBounds& bounds,
                                     std::uint64_t run_seed, InitialJammerState initial) {
  bounds.validate();
  std::vector<JammerChain> chains;
  chains.reserve(n_channels);
  for (std::size_t k = 0; k < n_channels; ++k) {
    Rng rng(run_seed, Stream::jammer, k);
    chains.push_back(init_chain(bounds, rng, initial));
  }
  return chains;
}

JammerState step(const JammerChain& chain, Rng& rng) {
  const double u = rng.uniform01();
  if (chain.state == JammerState::idle) return u < chain.p00 ? JammerState::idle : JammerState::active;
  return u < chain.p11 ? JammerState::active : JammerState::idle;
}

SpectrumTruth truth_snapshot(std::span<const JammerChain> chains) {
  SpectrumTruth truth;
  truth.reserve(chains.size());
  for (const auto& chain : chains) {
    truth.push_back(chain.state == JammerState::active ? Occupancy::occupied : Occupancy::vacant);
  }
  return truth;
}

JammerBank::JammerBank(std::size_t n_channels, const PersistenceBounds& bounds, std::uint64_t run_seed,
                       InitialJammerState initial) {
  bounds.validate();
  chains_.reserve(n_channels);
  streams_.reserve(n_channels);
  for (std::size_t k = 0; k < n_channels; ++k) {
    streams_.emplace_back(run_seed, Stream::jammer, k);
    chains_.push_back(init_chain(bounds, streams_.back(), initial));
  }
}

void JammerBank::advance() {
  for (std::size_t k = 0; k < chains_.size(); ++k) chains_[k].state = step(chains_[k], streams_[k]);
}

}  // namespace cssim
