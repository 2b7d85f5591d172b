#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cssim/engine.hpp"
#include "cssim/metrics.hpp"

namespace cssim {

/// `git describe` of the build, or "unknown".
std::string_view version_string();

struct ExperimentVariant {
  /// Sub-directory of the output directory; empty writes into it directly.
  std::string name;
  SimConfig config;
};

struct ExperimentOptions {
  std::filesystem::path out_dir;
  bool trace = false;
  unsigned jobs = 0;
  std::string preset;  // recorded in the summary only
};

struct VariantOutcome {
  std::string name;
  BatchResult batch;
};

/// Runs each variant's batch and writes metrics.csv, summary.txt and, when
/// requested, trace.csv (replication 0) per variant. All configs are
/// validated before anything is written; on failure every file and
/// directory created by this call is removed and the error rethrown.
std::vector<VariantOutcome> run_experiment(std::span<const ExperimentVariant> variants,
                                           const ExperimentOptions& options, std::ostream& log);

/// Columns t, jdr_mean, jdr_std, tsr_mean, tsr_std; t counts steps from 1.
void write_metrics_csv(std::ostream& out, const BatchResult& batch);
/// One row per node-step: t, node, action, m, tau, transmit, outcome, d, delta.
void write_trace_csv(std::ostream& out, const RunRecord& record);
/// Config echo followed by meta.* and result.* lines.
void write_summary(std::ostream& out, const SimConfig& config, const BatchResult& batch, const RunRecord& first_run,
                   std::string_view preset, std::string_view variant);

/// Writes grid_awgn.csv (0..15 dB x m = 1..6) and grid_rayleigh.csv (m = 1).
void export_grid(const DetectionParams& params, const std::filesystem::path& out_dir);

}  // namespace cssim
