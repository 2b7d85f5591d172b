// Command-line front end: runs scenarios and presets, exports detection tables.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cssim/config.hpp"
#include "cssim/experiment.hpp"

namespace {

struct RunArgs {
  std::string config_path;
  std::string preset;
  std::string out_dir;
  std::optional<std::size_t> replications;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> policy;
  std::optional<std::string> fading;
  std::optional<std::string> super_decision;
  std::optional<std::size_t> n_fb;
  bool trace = false;
  unsigned jobs = 0;
};

cssim::SimConfig base_config(const std::string& path) {
  if (path.empty()) return cssim::SimConfig{};
  return cssim::parse_config(path);
}

void apply_overrides(cssim::SimConfig& config, const RunArgs& args) {
  if (args.replications) cssim::apply_setting(config, "replications", std::to_string(*args.replications));
  if (args.seed) cssim::apply_setting(config, "seed", std::to_string(*args.seed));
  if (args.policy) cssim::apply_setting(config, "policy", *args.policy);
  if (args.fading) cssim::apply_setting(config, "fading", *args.fading);
  if (args.super_decision) cssim::apply_setting(config, "super_decision", *args.super_decision);
  if (args.n_fb) cssim::apply_setting(config, "n_fb", std::to_string(*args.n_fb));
}

int run_command(const RunArgs& args) {
  const cssim::SimConfig base = base_config(args.config_path);
  std::vector<cssim::ExperimentVariant> variants;
  if (args.preset.empty()) {
    cssim::SimConfig config = base;
    apply_overrides(config, args);
    variants.push_back({"", config});
  } else {
    for (const auto& variant : cssim::find_preset(args.preset).variants) {
      cssim::SimConfig config = base;
      variant.apply(config);
      apply_overrides(config, args);
      variants.push_back({variant.name, config});
    }
  }
  cssim::ExperimentOptions options;
  options.out_dir = args.out_dir;
  options.trace = args.trace;
  options.jobs = args.jobs;
  options.preset = args.preset;
  cssim::run_experiment(variants, options, std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collaborative spectrum sensing and jammer avoidance simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cssim::version_string()));

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run a scenario or preset and write metrics.csv / summary.txt");
  run->add_option("--config", run_args.config_path, "Scenario file (key = value)")->check(CLI::ExistingFile);
  run->add_option("--preset", run_args.preset, "paper, fig3-awgn, fig3-rayleigh, fig4-local, fig4-super");
  run->add_option("--out", run_args.out_dir, "Output directory")->required();
  run->add_option("--replications", run_args.replications, "Replications per curve");
  run->add_option("--seed", run_args.seed, "Base seed");
  run->add_option("--policy", run_args.policy, "pseudo_random | uniform | qlearning");
  run->add_option("--fading", run_args.fading, "awgn | rayleigh");
  run->add_option("--super-decision", run_args.super_decision, "on | off");
  run->add_option("--n-fb", run_args.n_fb, "Number of channels (and jammers)");
  run->add_flag("--trace", run_args.trace, "Also write trace.csv for replication 0");
  run->add_option("--jobs", run_args.jobs, "Worker threads (0 = all cores)");

  std::string grid_config;
  std::string grid_out;
  auto* grid = app.add_subcommand("export-grid", "Write grid_awgn.csv and grid_rayleigh.csv");
  grid->add_option("--config", grid_config, "Scenario file supplying detection parameters")->check(CLI::ExistingFile);
  grid->add_option("--out", grid_out, "Output directory")->required();

  auto* list = app.add_subcommand("presets", "List experiment presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_command(run_args);
    if (grid->parsed()) {
      cssim::export_grid(base_config(grid_config).detection, grid_out);
      return 0;
    }
    if (list->parsed()) {
      for (const auto& preset : cssim::presets()) {
        std::string names;
        for (const auto& v : preset.variants) names += (names.empty() ? "" : ", ") + v.name;
        std::cout << fmt::format("{:<14} {} [{}]\n", preset.name, preset.description, names);
      }
      return 0;
    }
  } catch (const cssim::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
