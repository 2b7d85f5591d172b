#include "cssim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

namespace cssim {

namespace {

// Range of the look-up tables; SNR outside it is clamped in both modes.
constexpr SnrAxis kSnrAxis{0.0, 15.0, 1.0};
constexpr int kGridDiversity = 6;

template <typename Enum, std::size_t N>
Enum parse_choice(std::string_view text, const std::pair<std::string_view, Enum> (&choices)[N], std::string_view what) {
  for (const auto& [name, value] : choices) {
    if (name == text) return value;
  }
  std::string expected;
  for (const auto& [name, value] : choices) expected += (expected.empty() ? "" : ", ") + std::string(name);
  throw std::invalid_argument(fmt::format("unknown {} '{}' (expected {})", what, text, expected));
}

constexpr std::pair<std::string_view, DetectionMode> kDetectionModes[] = {{"grid", DetectionMode::grid},
                                                                         {"exact", DetectionMode::exact}};
constexpr std::pair<std::string_view, CohortScope> kCohortScopes[] = {{"local", CohortScope::local},
                                                                     {"global", CohortScope::global}};
constexpr std::pair<std::string_view, VerdictDraw> kVerdictDraws[] = {{"shared", VerdictDraw::shared},
                                                                     {"per_node", VerdictDraw::per_node}};
constexpr std::pair<std::string_view, TransmitChoice> kTransmitChoices[] = {{"uniform", TransmitChoice::uniform},
                                                                           {"lowest", TransmitChoice::lowest}};

template <typename Enum, std::size_t N>
std::string_view name_of(Enum value, const std::pair<std::string_view, Enum> (&choices)[N]) {
  for (const auto& [name, v] : choices) {
    if (v == value) return name;
  }
  return "?";
}

}  // namespace

std::string_view to_string(DetectionMode value) { return name_of(value, kDetectionModes); }
std::string_view to_string(CohortScope value) { return name_of(value, kCohortScopes); }
std::string_view to_string(VerdictDraw value) { return name_of(value, kVerdictDraws); }
std::string_view to_string(TransmitChoice value) { return name_of(value, kTransmitChoices); }
DetectionMode parse_detection_mode(std::string_view text) { return parse_choice(text, kDetectionModes, "detection mode"); }
CohortScope parse_cohort_scope(std::string_view text) { return parse_choice(text, kCohortScopes, "cohort scope"); }
VerdictDraw parse_verdict_draw(std::string_view text) { return parse_choice(text, kVerdictDraws, "verdict draw"); }
TransmitChoice parse_transmit_choice(std::string_view text) {
  return parse_choice(text, kTransmitChoices, "transmit choice");
}

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::successful: return "successful";
    case Outcome::jammed: return "jammed";
    case Outcome::skipped: return "skipped";
  }
  return "skipped";
}

void SimConfig::validate() const {
  if (n_wn < 1) throw std::invalid_argument("n_wn must be >= 1");
  if (n_fb < 1) throw std::invalid_argument("n_fb must be >= 1");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (replications < 1) throw std::invalid_argument("replications must be >= 1");
  if (!(noise_var > 0.0) || !std::isfinite(noise_var)) throw std::invalid_argument("noise_var must be positive");
  detection.validate();
  policy.validate();
  jammer_bounds.validate();
  placement.validate();
  if (placement.nodes.size() != n_wn) {
    throw std::invalid_argument(
        fmt::format("placement lists {} node positions but n_wn = {}", placement.nodes.size(), n_wn));
  }
  for (std::size_t i = 0; i < n_wn; ++i) {
    if (!(distance(placement.nodes[i], placement.jammer) > 0.0)) {
      throw std::invalid_argument(fmt::format("node {} is co-located with the jammer site", i));
    }
  }
}

std::vector<double> node_snr(const SimConfig& config) {
  std::vector<double> snr;
  snr.reserve(config.n_wn);
  for (std::size_t i = 0; i < config.n_wn; ++i) snr.push_back(snr_at_node(config.placement, i, config.noise_var));
  return snr;
}

DetectionModel::DetectionModel(const SimConfig& config, std::vector<double> node_snr)
    : fading_(config.fading),
      mode_(config.detection_mode),
      params_(config.detection),
      false_alarms_(config.false_alarms),
      snr_(std::move(node_snr)) {
  params_.validate();
  for (double& gamma : snr_) {
    const double clamped_db = std::clamp(linear_to_db(gamma), kSnrAxis.min_db, kSnrAxis.max_db);
    snr_db_.push_back(clamped_db);
    gamma = db_to_linear(clamped_db);
  }
  if (mode_ == DetectionMode::grid) {
    grid_ = fading_ == Fading::awgn ? build_awgn_grid(params_, kSnrAxis, kGridDiversity)
                                    : build_rayleigh_grid(params_, kSnrAxis);
  }
}

double DetectionModel::detection(std::size_t node, std::span<const std::size_t> cohort) const {
  const int m = static_cast<int>(cohort.size());
  if (fading_ == Fading::awgn) {
    return grid_ ? grid_->lookup(snr_db_.at(node), m) : pd_awgn(params_, snr_.at(node), m);
  }
  std::vector<double> singles;
  singles.reserve(cohort.size());
  for (std::size_t member : cohort) {
    singles.push_back(grid_ ? grid_->lookup(snr_db_.at(member), 1) : pd_rayleigh_single(params_, snr_.at(member)));
  }
  return pd_rayleigh_combined(singles);
}

double DetectionModel::false_alarm(int diversity) const { return false_alarms_.lookup(fading_, diversity); }

RunRecord run(const SimConfig& config) { return run(config, replication_seed(config.seed, 0)); }

RunRecord run(const SimConfig& config, std::uint64_t run_seed) {
  config.validate();
  const std::size_t n_wn = config.n_wn;
  const std::size_t n_fb = config.n_fb;
  const auto graph = build_neighbor_graph(config.placement);
  const DetectionModel model(config, node_snr(config));
  JammerBank jammers(n_fb, config.jammer_bounds, run_seed, config.jammer_initial);

  RunRecord record;
  record.config = config;
  record.run_seed = run_seed;
  record.initial_chains = jammers.chains();
  record.node_snr_db = model.snr_db();
  record.steps.reserve(config.horizon);

  const bool shared_draw = config.verdict_draw == VerdictDraw::shared;
  std::vector<Rng> sensing_streams;
  std::vector<Rng> policy_streams;
  std::vector<Rng> transmit_streams;
  for (std::size_t k = 0; k < (shared_draw ? n_fb : n_wn); ++k) sensing_streams.emplace_back(run_seed, Stream::sensing, k);
  for (std::size_t i = 0; i < n_wn; ++i) {
    policy_streams.emplace_back(run_seed, Stream::policy, i);
    transmit_streams.emplace_back(run_seed, Stream::transmit, i);
  }

  std::vector<std::size_t> actions(n_wn);
  for (std::size_t i = 0; i < n_wn; ++i) {
    Rng init(run_seed, Stream::initial_action, i);
    actions[i] = init.uniform_index(n_fb);
  }

  QTable q_table(config.policy.kind == PolicyKind::qlearning ? n_wn : 0, n_fb);
  struct Remembered {
    Belief belief = Belief::unknown;
    long time = 0;
  };
  std::vector<std::vector<Remembered>> memory(config.decision_memory > 0 ? n_wn : 0,
                                              std::vector<Remembered>(n_fb));

  std::vector<double> draws;
  std::vector<std::size_t> cohort;
  std::vector<Observation> observations(n_wn);
  std::vector<std::vector<NeighborReport>> reports(n_wn);
  std::vector<DecisionVector> decisions(n_wn);
  std::vector<std::size_t> next_actions(n_wn);

  for (std::size_t step_index = 0; step_index < config.horizon; ++step_index) {
    const long t = static_cast<long>(step_index);
    if (step_index > 0) jammers.advance();

    StepRecord step;
    step.time = t;
    step.truth = jammers.truth();
    step.nodes.resize(n_wn);

    // Sensing sub-slot. Every stream advances once per step regardless of
    // which channels are sensed.
    draws.clear();
    for (auto& stream : sensing_streams) draws.push_back(stream.uniform01());
    for (std::size_t i = 0; i < n_wn; ++i) {
      const std::size_t channel = actions[i];
      cohort.clear();
      if (config.cohort == CohortScope::global) {
        for (std::size_t j = 0; j < n_wn; ++j) {
          if (actions[j] == channel) cohort.push_back(j);
        }
      } else {
        cohort.push_back(i);
        for (std::size_t j : graph.neighbors(i)) {
          if (actions[j] == channel) cohort.push_back(j);
        }
      }
      const int m = static_cast<int>(cohort.size());
      const double p = step.truth[channel] == Occupancy::occupied ? model.detection(i, cohort) : model.false_alarm(m);
      const double u = shared_draw ? draws[channel] : draws[i];
      observations[i] = Observation{i, channel, u < p ? Occupancy::occupied : Occupancy::vacant, t};
      step.nodes[i].action = channel;
      step.nodes[i].observation = observations[i].verdict;
      step.nodes[i].cohort = m;
    }

    // Collaboration sub-slot: {action, observation} tuples to neighbours,
    // local OR fusion, then the next sensing action.
    std::vector<Observation> shared;
    for (std::size_t i = 0; i < n_wn; ++i) {
      reports[i].clear();
      shared.clear();
      for (std::size_t j : graph.neighbors(i)) {
        reports[i].push_back({j, observations[j].channel, observations[j].verdict});
        shared.push_back(observations[j]);
      }
      decisions[i] = fuse_observations(n_fb, observations[i], shared);
      if (!memory.empty()) {
        for (std::size_t c = 0; c < n_fb; ++c) {
          auto& slot = memory[i][c];
          if (decisions[i].beliefs[c] != Belief::unknown) {
            slot = {decisions[i].beliefs[c], t};
          } else if (slot.belief != Belief::unknown &&
                     t - slot.time <= static_cast<long>(config.decision_memory)) {
            decisions[i].beliefs[c] = slot.belief;
          }
        }
      }
    }

    for (std::size_t i = 0; i < n_wn; ++i) {
      const PolicyInput input{actions[i], observations[i].verdict, reports[i], n_fb};
      switch (config.policy.kind) {
        case PolicyKind::pseudo_random:
          next_actions[i] = choose_action_pseudo_random(input, config.policy.pseudo_random, policy_streams[i]);
          break;
        case PolicyKind::uniform:
          next_actions[i] = choose_action_uniform(input, policy_streams[i]);
          break;
        case PolicyKind::qlearning:
          learn_from_step(q_table, i, input, config.policy.qlearning);
          next_actions[i] = choose_action_qlearning(input, i, q_table, config.policy.qlearning, policy_streams[i]);
          break;
      }
    }

    // Decision-vector exchange and transmission sub-slot.
    std::vector<DecisionVector> neighbor_decisions;
    for (std::size_t i = 0; i < n_wn; ++i) {
      NodeStep& node = step.nodes[i];
      node.decision = decisions[i];
      const BeliefVector* governing = &node.decision;
      if (config.super_decision) {
        neighbor_decisions.clear();
        for (std::size_t j : graph.neighbors(i)) neighbor_decisions.push_back(decisions[j]);
        node.super_decision = fuse_decisions(decisions[i], neighbor_decisions);
        governing = &node.super_decision;
      }
      const auto candidates = candidate_channels(*governing);
      Rng& stream = transmit_streams[i];
      if (candidates.empty()) {
        node.outcome = Outcome::skipped;
        continue;
      }
      const std::size_t channel = config.transmit_choice == TransmitChoice::uniform
                                      ? candidates[stream.uniform_index(candidates.size())]
                                      : candidates.front();
      node.transmit = channel;
      node.outcome = step.truth[channel] == Occupancy::occupied ? Outcome::jammed : Outcome::successful;
    }

    record.steps.push_back(std::move(step));
    actions.swap(next_actions);
  }
  return record;
}

}  // namespace cssim
