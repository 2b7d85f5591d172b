#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cssim/engine.hpp"

namespace cssim {

/// numerator / denominator, reported as 0 with `empty_denominator` set when
/// nothing was counted.
struct Ratio {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 0;

  bool empty_denominator() const { return denominator == 0; }
  double value() const {
    return denominator == 0 ? 0.0 : static_cast<double>(numerator) / static_cast<double>(denominator);
  }
};

/// Jammer detection ratio over the first `upto` steps: jammed channel-steps on
/// which at least one node sensed the channel and observed it occupied, over
/// all jammed channel-steps. Throws std::out_of_range if upto > T.
Ratio jammer_detection_ratio(const RunRecord& record, std::size_t upto);

/// Transmission success rate over the first `upto` steps: successful over
/// successful + jammed node-steps; skipped node-steps are excluded.
Ratio transmission_success_rate(const RunRecord& record, std::size_t upto);

/// Cumulative JDR and TSR after each step (index t holds the value over the
/// first t + 1 steps), accumulated incrementally.
struct RunCurves {
  std::vector<double> jdr;
  std::vector<double> tsr;
};

RunCurves metric_curves(const RunRecord& record);

struct SampleSummary {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for one sample
};

SampleSummary summarize(std::span<const double> values);

struct BatchResult {
  std::vector<std::uint64_t> run_seeds;
  std::vector<double> jdr_mean;
  std::vector<double> jdr_std;
  std::vector<double> tsr_mean;
  std::vector<double> tsr_std;
  std::vector<double> final_jdr;  // per replication, in replication order
  std::vector<double> final_tsr;
  SampleSummary final_jdr_summary;
  SampleSummary final_tsr_summary;
};

/// Per-step mean and standard deviation over replications, reduced in the
/// order given.
BatchResult aggregate(std::span<const RunCurves> runs);

/// Runs every seed in `run_seeds` (on up to `jobs` threads; 0 = hardware
/// concurrency) and aggregates in seed-list order.
BatchResult run_batch(const SimConfig& config, std::span<const std::uint64_t> run_seeds, unsigned jobs = 0);

/// config.replications runs with seeds replication_seed(config.seed, r).
BatchResult run_batch(const SimConfig& config, unsigned jobs = 0);

}  // namespace cssim
