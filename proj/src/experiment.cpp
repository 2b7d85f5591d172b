#include "cssim/experiment.hpp"

#include <fstream>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "cssim/config.hpp"

#ifndef CSSIM_VERSION
#define CSSIM_VERSION "unknown"
#endif

namespace cssim {

namespace fs = std::filesystem;

namespace {

/// Remembers what a call created so that a failed run leaves nothing behind.
class OutputTransaction {
 public:
  ~OutputTransaction() {
    if (committed_) return;
    std::error_code ignored;
    for (auto it = created_.rbegin(); it != created_.rend(); ++it) fs::remove(*it, ignored);
  }

  void make_directory(const fs::path& dir) {
    std::vector<fs::path> missing;
    for (fs::path p = dir; !p.empty() && !fs::exists(p); p = p.parent_path()) {
      missing.push_back(p);
      if (p == p.parent_path()) break;
    }
    fs::create_directories(dir);
    created_.insert(created_.end(), missing.rbegin(), missing.rend());
  }

  std::ofstream open(const fs::path& file) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(fmt::format("cannot write {}", file.string()));
    created_.push_back(file);
    return out;
  }

  void commit() { committed_ = true; }

 private:
  std::vector<fs::path> created_;
  bool committed_ = false;
};

void finish(std::ofstream& out, const fs::path& file) {
  out.flush();
  if (!out) throw std::runtime_error(fmt::format("failed writing {}", file.string()));
}

}  // namespace

std::string_view version_string() { return CSSIM_VERSION; }

void write_metrics_csv(std::ostream& out, const BatchResult& batch) {
  out << "t,jdr_mean,jdr_std,tsr_mean,tsr_std\n";
  for (std::size_t t = 0; t < batch.jdr_mean.size(); ++t) {
    out << fmt::format("{},{:.10f},{:.10f},{:.10f},{:.10f}\n", t + 1, batch.jdr_mean[t], batch.jdr_std[t],
                       batch.tsr_mean[t], batch.tsr_std[t]);
  }
}

void write_trace_csv(std::ostream& out, const RunRecord& record) {
  out << "t,node,action,m,tau,transmit,outcome,d,delta\n";
  for (const auto& step : record.steps) {
    for (std::size_t i = 0; i < step.nodes.size(); ++i) {
      const auto& node = step.nodes[i];
      out << fmt::format("{},{},{},{},{},{},{},{},{}\n", step.time, i, node.action, node.cohort,
                         node.observation == Occupancy::occupied ? 'O' : 'V',
                         node.transmit ? fmt::format("{}", *node.transmit) : std::string("-"), to_string(node.outcome),
                         node.decision.codes(),
                         node.super_decision.beliefs.empty() ? std::string("-") : node.super_decision.codes());
    }
  }
}

void write_summary(std::ostream& out, const SimConfig& config, const BatchResult& batch, const RunRecord& first_run,
                   std::string_view preset, std::string_view variant) {
  out << "# scenario (feed this file back with --config to reproduce the run)\n";
  out << to_config_text(config);
  out << "\n# provenance\n";
  out << fmt::format("meta.version = {}\n", version_string());
  out << fmt::format("meta.preset = {}\n", preset.empty() ? "-" : preset);
  out << fmt::format("meta.variant = {}\n", variant.empty() ? "-" : variant);
  out << "meta.prng = xoshiro256** seeded by splitmix64; run seed r = splitmix64 output r+1 of seed\n";
  if (config.policy.kind == PolicyKind::qlearning) {
    out << "meta.policy_note = qlearning is a reconstructed baseline, not a faithful reimplementation\n";
  }
  std::string seeds;
  for (auto s : batch.run_seeds) seeds += (seeds.empty() ? "" : ", ") + fmt::format("{}", s);
  out << fmt::format("meta.run_seeds = {}\n", seeds);

  std::string chains;
  for (const auto& chain : first_run.initial_chains) {
    chains += fmt::format("{}{} {} {}", chains.empty() ? "" : "; ", chain.p00, chain.p11,
                          chain.state == JammerState::active ? "active" : "idle");
  }
  out << fmt::format("meta.jammer_chains_run0 = {}\n", chains);
  std::string snr;
  for (double db : first_run.node_snr_db) snr += (snr.empty() ? "" : ", ") + fmt::format("{}", db);
  out << fmt::format("meta.node_snr_db = {}\n", snr);
  const auto graph = build_neighbor_graph(config.placement);
  std::string edges;
  for (std::size_t i = 0; i < graph.size(); ++i) {
    for (std::size_t j : graph.neighbors(i)) {
      if (i < j) edges += fmt::format("{}{}-{}", edges.empty() ? "" : " ", i, j);
    }
  }
  out << fmt::format("meta.neighbor_edges = {}\n", edges);

  out << "\n# results (final step, over replications)\n";
  out << fmt::format("result.final_jdr_mean = {:.10f}\n", batch.final_jdr_summary.mean);
  out << fmt::format("result.final_jdr_std = {:.10f}\n", batch.final_jdr_summary.stddev);
  out << fmt::format("result.final_tsr_mean = {:.10f}\n", batch.final_tsr_summary.mean);
  out << fmt::format("result.final_tsr_std = {:.10f}\n", batch.final_tsr_summary.stddev);
  const Ratio jdr0 = jammer_detection_ratio(first_run, first_run.steps.size());
  const Ratio tsr0 = transmission_success_rate(first_run, first_run.steps.size());
  out << fmt::format("result.run0_jdr_empty_denominator = {}\n", jdr0.empty_denominator() ? "yes" : "no");
  out << fmt::format("result.run0_tsr_empty_denominator = {}\n", tsr0.empty_denominator() ? "yes" : "no");
}

std::vector<VariantOutcome> run_experiment(std::span<const ExperimentVariant> variants,
                                           const ExperimentOptions& options, std::ostream& log) {
  if (variants.empty()) throw std::invalid_argument("no variants to run");
  for (const auto& variant : variants) {
    try {
      variant.config.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(variant.name.empty() ? std::string(e.what()) : fmt::format("{}: {}", variant.name, e.what()));
    }
  }

  OutputTransaction transaction;
  std::vector<VariantOutcome> outcomes;
  for (const auto& variant : variants) {
    const fs::path dir = variant.name.empty() ? options.out_dir : options.out_dir / variant.name;
    transaction.make_directory(dir);

    auto batch = run_batch(variant.config, options.jobs);
    const RunRecord first_run = run(variant.config, batch.run_seeds.front());

    {
      const auto file = dir / "metrics.csv";
      auto out = transaction.open(file);
      write_metrics_csv(out, batch);
      finish(out, file);
    }
    {
      const auto file = dir / "summary.txt";
      auto out = transaction.open(file);
      write_summary(out, variant.config, batch, first_run, options.preset, variant.name);
      finish(out, file);
    }
    if (options.trace) {
      const auto file = dir / "trace.csv";
      auto out = transaction.open(file);
      write_trace_csv(out, first_run);
      finish(out, file);
    }
    log << fmt::format("{}final_jdr={:.6f} (std {:.6f})  final_tsr={:.6f} (std {:.6f})  replications={}\n",
                       variant.name.empty() ? "" : variant.name + ": ", batch.final_jdr_summary.mean,
                       batch.final_jdr_summary.stddev, batch.final_tsr_summary.mean, batch.final_tsr_summary.stddev,
                       batch.run_seeds.size());
    outcomes.push_back({variant.name, std::move(batch)});
  }
  transaction.commit();
  return outcomes;
}

void export_grid(const DetectionParams& params, const fs::path& out_dir) {
  params.validate();
  const auto awgn = build_awgn_grid(params);
  const auto rayleigh = build_rayleigh_grid(params);
  OutputTransaction transaction;
  transaction.make_directory(out_dir);
  for (const auto& [name, grid] : {std::pair{"grid_awgn.csv", &awgn}, std::pair{"grid_rayleigh.csv", &rayleigh}}) {
    const auto file = out_dir / name;
    auto out = transaction.open(file);
    grid->write_csv(out);
    finish(out, file);
  }
  transaction.commit();
}

}  // namespace cssim
