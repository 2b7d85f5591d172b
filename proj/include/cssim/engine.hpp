#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cssim/fusion.hpp"
#include "cssim/jammer_model.hpp"
#include "cssim/network.hpp"
#include "cssim/policies.hpp"
#include "cssim/sensing_math.hpp"

namespace cssim {

/// `grid` snaps SNR to the 1 dB look-up table, `exact` evaluates per query.
enum class DetectionMode { grid, exact };
/// Cohort of a sensing node: itself plus its neighbours on the same channel
/// (`local`) or every node on the same channel (`global`).
enum class CohortScope { local, global };
/// `shared`: one uniform draw per channel and step, thresholded by each
/// sensing node's own probability. `per_node`: one draw per node.
enum class VerdictDraw { shared, per_node };
enum class TransmitChoice { uniform, lowest };

std::string_view to_string(DetectionMode value);
std::string_view to_string(CohortScope value);
std::string_view to_string(VerdictDraw value);
std::string_view to_string(TransmitChoice value);
DetectionMode parse_detection_mode(std::string_view text);
CohortScope parse_cohort_scope(std::string_view text);
VerdictDraw parse_verdict_draw(std::string_view text);
TransmitChoice parse_transmit_choice(std::string_view text);

struct SimConfig {
  std::uint64_t seed = 1;
  std::size_t replications = 100;
  std::size_t n_wn = 10;
  std::size_t n_fb = 10;  // also the number of jammers
  std::size_t horizon = 2000;
  Fading fading = Fading::awgn;
  PolicyConfig policy;
  DetectionParams detection;
  FalseAlarmTable false_alarms = FalseAlarmTable::defaults();
  Placement placement = default_placement(10);
  PersistenceBounds jammer_bounds;
  InitialJammerState jammer_initial = InitialJammerState::random;
  double noise_var = 1.0;
  bool super_decision = true;
  DetectionMode detection_mode = DetectionMode::grid;
  CohortScope cohort = CohortScope::local;
  VerdictDraw verdict_draw = VerdictDraw::shared;
  TransmitChoice transmit_choice = TransmitChoice::uniform;
  /// Steps a fused belief is remembered for channels not observed again; 0 = off.
  std::size_t decision_memory = 0;

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;

  bool operator==(const SimConfig&) const = default;
};

enum class Outcome : std::uint8_t { successful, jammed, skipped };

std::string_view to_string(Outcome outcome);

struct NodeStep {
  std::size_t action = 0;
  Occupancy observation = Occupancy::vacant;
  int cohort = 1;
  DecisionVector decision;
  /// Empty when super-decision fusion is disabled.
  SuperDecisionVector super_decision;
  std::optional<std::size_t> transmit;
  Outcome outcome = Outcome::skipped;
};

struct StepRecord {
  long time = 0;
  SpectrumTruth truth;
  std::vector<NodeStep> nodes;
};

struct RunRecord {
  SimConfig config;
  std::uint64_t run_seed = 0;
  std::vector<JammerChain> initial_chains;
  std::vector<double> node_snr_db;
  std::vector<StepRecord> steps;
};

/// Detection and false-alarm probabilities for one scenario. Immutable.
class DetectionModel {
 public:
  DetectionModel(const SimConfig& config, std::vector<double> node_snr);

  /// Probability that `node` reports a jammer on an occupied channel sensed
  /// together with `cohort` (which includes `node`).
  double detection(std::size_t node, std::span<const std::size_t> cohort) const;
  double false_alarm(int diversity) const;
  const std::vector<double>& snr_db() const { return snr_db_; }

 private:
  Fading fading_;
  DetectionMode mode_;
  DetectionParams params_;
  FalseAlarmTable false_alarms_;
  std::vector<double> snr_;
  std::vector<double> snr_db_;
  std::optional<ProbabilityGrid> grid_;
};

/// Linear SNR of every node, from the placement geometry.
std::vector<double> node_snr(const SimConfig& config);

/// One replication under run seed `run_seed`.
RunRecord run(const SimConfig& config, std::uint64_t run_seed);
/// Replication 0 of config.seed.
RunRecord run(const SimConfig& config);

}  // namespace cssim
