#include <doctest.h>

#include <stdexcept>

#include <filesystem>
#include <fstream>
#include <set>

#include "cssim/config.hpp"
#include "invariants.hpp"

using namespace cssim;

namespace {

std::string error_of(std::string_view text) {
  try {
    parse_config_text(text, "scenario.cfg");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("a seed-only file is the default scenario") {
  const auto config = parse_config_text("seed = 5\n");
  SimConfig expected;
  expected.seed = 5;
  CHECK(config == expected);
  CHECK(config.n_wn == 10);
  CHECK(config.n_fb == 10);
  CHECK(config.horizon == 2000);
  CHECK(config.replications == 100);
  CHECK(config.placement.jammer_power_db == 15.0);
  CHECK(config.policy.pseudo_random.epsilon_n == 0.1);
}

TEST_CASE("channel override creates that many jammers") {
  auto config = parse_config_text("n_fb = 20\nhorizon = 3\n");
  CHECK(run(config, 1).initial_chains.size() == 20);
}

TEST_CASE("comments, blank lines and output-only keys") {
  const auto config = parse_config_text(
      "# header\n\n  policy = uniform   # trailing\nmeta.version = abc\nresult.final_jdr_mean = 0.4\n");
  CHECK(config.policy.kind == PolicyKind::uniform);
}

TEST_CASE("positions and node count") {
  const auto config = parse_config_text("n_wn = 3\nnode_positions = 0.1 0; 0 0.2; -0.3 0.1\njammer_position = 0 -0.05\n");
  REQUIRE(config.placement.nodes.size() == 3);
  CHECK(config.placement.nodes[2] == Point{-0.3, 0.1});
  CHECK(config.placement.jammer == Point{0.0, -0.05});
  const auto ring = parse_config_text("n_wn = 6\n");
  CHECK(ring.placement.nodes == ring_layout(6));
  CHECK(error_of("n_wn = 3\nnode_positions = 0.1 0; 0 0.2\n").find("scenario.cfg") == 0);
}

TEST_CASE("errors are anchored to the line") {
  CHECK(error_of("seed = 1\nbogus = 3\n").find("scenario.cfg:2:") == 0);
  CHECK(error_of("seed = 1\nseed = 2\n").find("scenario.cfg:2: key 'seed' given twice") == 0);
  CHECK(error_of("seed 1\n").find("scenario.cfg:1: expected 'key = value'") == 0);
  CHECK(error_of("\n\nepsilon_n = 1.5\n").find("scenario.cfg:3: epsilon_n:") == 0);
  CHECK(error_of("fading = nakagami\n").find("scenario.cfg:1:") == 0);
  CHECK(error_of("horizon = -4\n").find("scenario.cfg:1:") == 0);
  CHECK(error_of("super_decision = maybe\n").find("scenario.cfg:1:") == 0);
  CHECK(error_of("n_samples = 7\n").find("scenario.cfg:1:") == 0);
  CHECK(error_of("jammer_p_min = 0.99\n") != "");
  CHECK_THROWS_AS(parse_config("/nonexistent/scenario.cfg"), ConfigError);
}

TEST_CASE("echo reads back to the same configuration") {
  Rng rng(606);
  for (int i = 0; i < 200; ++i) {
    const auto config = invariants::random_config(rng);
    const auto text = to_config_text(config);
    REQUIRE(parse_config_text(text) == config);
  }
  SimConfig odd;
  odd.detection.threshold = 0.1 + 0.2;
  odd.false_alarms = FalseAlarmTable({1.0 / 3.0, 1e-9}, {0.5});
  CHECK(parse_config_text(to_config_text(odd)) == odd);
}

TEST_CASE("every documented key appears in the echo") {
  const auto text = "\n" + to_config_text(SimConfig{});
  for (const auto& key : config_keys()) CHECK(text.find("\n" + key + " = ") != std::string::npos);
}

TEST_CASE("presets") {
  std::set<std::string> names;
  for (const auto& p : presets()) CHECK(names.insert(p.name).second);
  CHECK(names == std::set<std::string>{"paper", "fig3-awgn", "fig3-rayleigh", "fig4-local", "fig4-super"});
  const auto& fig3 = find_preset("fig3-awgn");
  REQUIRE(fig3.variants.size() == 3);
  std::set<PolicyKind> kinds;
  for (const auto& v : fig3.variants) {
    SimConfig c;
    v.apply(c);
    kinds.insert(c.policy.kind);
    CHECK(c.replications == 100);
    CHECK(c.fading == Fading::awgn);
  }
  CHECK(kinds.size() == 3);
  SimConfig local;
  find_preset("fig4-local").variants[0].apply(local);
  CHECK_FALSE(local.super_decision);
  SimConfig ray;
  find_preset("fig3-rayleigh").variants[1].apply(ray);
  CHECK(ray.fading == Fading::rayleigh);
  CHECK_THROWS_AS(find_preset("fig5"), ConfigError);
}

}
