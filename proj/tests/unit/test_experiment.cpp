#include <doctest.h>

#include <stdexcept>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cssim/config.hpp"
#include "cssim/experiment.hpp"

using namespace cssim;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("cssim_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

SimConfig small() {
  SimConfig c;
  c.horizon = 120;
  c.replications = 3;
  return c;
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("single variant output files") {
  TempDir dir;
  std::ostringstream log;
  const std::vector<ExperimentVariant> variants{{"", small()}};
  run_experiment(variants, {dir.path, true, 1, ""}, log);
  const auto metrics = slurp(dir.path / "metrics.csv");
  CHECK(metrics.rfind("t,jdr_mean,jdr_std,tsr_mean,tsr_std\n1,", 0) == 0);
  CHECK(std::count(metrics.begin(), metrics.end(), '\n') == 121);
  const auto trace = slurp(dir.path / "trace.csv");
  CHECK(trace.rfind("t,node,action,m,tau,transmit,outcome,d,delta\n", 0) == 0);
  CHECK(std::count(trace.begin(), trace.end(), '\n') == 1 + 120 * 10);
  const auto summary = slurp(dir.path / "summary.txt");
  CHECK(summary.find("meta.version = ") != std::string::npos);
  CHECK(summary.find("meta.run_seeds = ") != std::string::npos);
  CHECK(summary.find("meta.neighbor_edges = 0-1 ") != std::string::npos);
  CHECK(summary.find("result.final_jdr_mean = ") != std::string::npos);
  CHECK(log.str().find("final_jdr=") != std::string::npos);
}

TEST_CASE("summary echo reproduces the metrics byte for byte") {
  TempDir first, second;
  std::ostringstream log;
  SimConfig config = small();
  config.policy.kind = PolicyKind::qlearning;
  config.seed = 31337;
  config.fading = Fading::rayleigh;
  const std::vector<ExperimentVariant> variants{{"", config}};
  run_experiment(variants, {first.path, false, 0, ""}, log);
  const auto echoed = parse_config(first.path / "summary.txt");
  CHECK(echoed == config);
  const std::vector<ExperimentVariant> again{{"", echoed}};
  run_experiment(again, {second.path, false, 2, ""}, log);
  CHECK(slurp(first.path / "metrics.csv") == slurp(second.path / "metrics.csv"));
}

TEST_CASE("preset variants go to their own directories") {
  TempDir dir;
  std::ostringstream log;
  std::vector<ExperimentVariant> variants;
  for (const auto& v : find_preset("fig4-local").variants) {
    SimConfig c = small();
    v.apply(c);
    variants.push_back({v.name, c});
  }
  const auto outcomes = run_experiment(variants, {dir.path, false, 0, "fig4-local"}, log);
  CHECK(outcomes.size() == 3);
  for (const auto& name : {"pseudo_random", "uniform", "qlearning"}) {
    CHECK(fs::exists(dir.path / name / "metrics.csv"));
    CHECK(slurp(dir.path / name / "summary.txt").find("meta.preset = fig4-local") != std::string::npos);
  }
}

TEST_CASE("an invalid variant writes nothing") {
  TempDir dir;
  std::ostringstream log;
  SimConfig bad = small();
  bad.n_wn = 4;
  const std::vector<ExperimentVariant> variants{{"ok", small()}, {"bad", bad}};
  CHECK_THROWS_AS(run_experiment(variants, {dir.path, false, 0, ""}, log), ConfigError);
  CHECK_FALSE(fs::exists(dir.path));
  CHECK_THROWS_AS(run_experiment({}, {dir.path, false, 0, ""}, log), std::invalid_argument);
}

TEST_CASE("grid export matches the pinned fixtures") {
  TempDir dir;
  export_grid(DetectionParams{}, dir.path);
  CHECK(slurp(dir.path / "grid_awgn.csv") == slurp(CSSIM_FIXTURE_DIR "/grid_awgn.csv"));
  CHECK(slurp(dir.path / "grid_rayleigh.csv") == slurp(CSSIM_FIXTURE_DIR "/grid_rayleigh.csv"));
  DetectionParams broken;
  broken.n_samples = 3;
  CHECK_THROWS_AS(export_grid(broken, dir.path / "x"), std::invalid_argument);
  CHECK_FALSE(fs::exists(dir.path / "x"));
}

}
