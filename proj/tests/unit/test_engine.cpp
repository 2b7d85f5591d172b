#include <doctest.h>

#include <stdexcept>

#include <sstream>

#include "cssim/engine.hpp"
#include "cssim/experiment.hpp"
#include "invariants.hpp"
#include "oracles.hpp"

using namespace cssim;

namespace {

std::string trace_of(const RunRecord& record) {
  std::ostringstream out;
  write_trace_csv(out, record);
  return out.str();
}

void require_clean(const RunRecord& record) {
  const auto violations = invariants::check_run(record);
  for (std::size_t k = 0; k < std::min<std::size_t>(violations.size(), 5); ++k) MESSAGE(violations[k]);
  REQUIRE(violations.empty());
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("default scenario run is regression pinned") {
  SimConfig config;
  const auto record = run(config);
  CHECK(record.run_seed == replication_seed(config.seed, 0));
  CHECK(record.steps.size() == 2000);
  // pinned after the invariant suite passed on this run
  CHECK(oracle::fnv1a(trace_of(record)) == 6381303938451703872ull);
}

TEST_CASE("same seed, same record") {
  SimConfig config;
  config.horizon = 300;
  CHECK(trace_of(run(config, 99)) == trace_of(run(config, 99)));
  CHECK(trace_of(run(config, 99)) != trace_of(run(config, 100)));
}

TEST_CASE("structural invariants on the default scenario") {
  SimConfig config;
  for (auto kind : {PolicyKind::pseudo_random, PolicyKind::uniform, PolicyKind::qlearning}) {
    for (auto fading : {Fading::awgn, Fading::rayleigh}) {
      config.policy.kind = kind;
      config.fading = fading;
      config.horizon = 400;
      require_clean(run(config, 5));
    }
  }
}

TEST_CASE("structural invariants on fuzzed configurations") {
  Rng rng(2718);
  for (int trial = 0; trial < 60; ++trial) {
    const auto config = invariants::random_config(rng);
    CAPTURE(trial);
    require_clean(run(config, config.seed));
  }
}

TEST_CASE("super decision stage does not disturb sensing") {
  SimConfig on;
  on.horizon = 500;
  SimConfig off = on;
  off.super_decision = false;
  for (auto kind : {PolicyKind::pseudo_random, PolicyKind::uniform, PolicyKind::qlearning}) {
    on.policy.kind = off.policy.kind = kind;
    const auto a = run(on, 17);
    const auto b = run(off, 17);
    for (std::size_t t = 0; t < a.steps.size(); ++t) {
      REQUIRE(a.steps[t].truth == b.steps[t].truth);
      for (std::size_t i = 0; i < a.steps[t].nodes.size(); ++i) {
        const auto& x = a.steps[t].nodes[i];
        const auto& y = b.steps[t].nodes[i];
        REQUIRE(x.action == y.action);
        REQUIRE(x.observation == y.observation);
        REQUIRE(x.cohort == y.cohort);
        REQUIRE(x.decision == y.decision);
      }
    }
  }
}

TEST_CASE("jammer trajectories do not depend on the nodes") {
  SimConfig a;
  a.horizon = 300;
  SimConfig b = a;
  b.policy.kind = PolicyKind::uniform;
  b.fading = Fading::rayleigh;
  b.super_decision = false;
  const auto x = run(a, 4);
  const auto y = run(b, 4);
  for (std::size_t t = 0; t < x.steps.size(); ++t) REQUIRE(x.steps[t].truth == y.steps[t].truth);
}

TEST_CASE("initial truth is the initial chain state") {
  SimConfig config;
  config.horizon = 1;
  const auto record = run(config, 8);
  CHECK(record.steps.front().truth == truth_snapshot(record.initial_chains));
}

TEST_CASE("shared verdicts: one draw per channel") {
  SimConfig config;
  config.horizon = 300;
  config.cohort = CohortScope::global;  // same channel, same m, same p
  const auto record = run(config, 12);
  for (const auto& step : record.steps) {
    for (const auto& a : step.nodes) {
      for (const auto& b : step.nodes) {
        if (a.action == b.action) REQUIRE(a.observation == b.observation);
      }
    }
  }
}

TEST_CASE("certain detection and silent false alarms") {
  SimConfig config;
  config.horizon = 200;
  config.detection.threshold = 0.0;  // every jammed channel is seen
  config.false_alarms = FalseAlarmTable({0.0}, {0.0});
  const auto record = run(config, 3);
  for (const auto& step : record.steps) {
    for (const auto& node : step.nodes) {
      REQUIRE((node.observation == Occupancy::occupied) == (step.truth[node.action] == Occupancy::occupied));
      REQUIRE(node.outcome != Outcome::jammed);
    }
  }
}

TEST_CASE("detection model") {
  SimConfig config;
  config.placement.nodes = {{0.05, 0.0}, {0.1, 0.0}, {0.9, 0.0}};
  config.n_wn = 3;
  const auto snr = node_snr(config);
  CHECK(snr[0] == doctest::Approx(std::pow(10.0, 1.5)));

  const DetectionModel grid(config, snr);
  const std::vector<std::size_t> one{0};
  const std::vector<std::size_t> two{0, 1};
  CHECK(grid.snr_db()[0] == doctest::Approx(15.0));
  CHECK(grid.snr_db()[2] == 0.0);  // clamped up from below 0 dB
  CHECK(grid.detection(0, one) == pd_awgn(config.detection, db_to_linear(15.0), 1));
  CHECK(grid.detection(0, two) == pd_awgn(config.detection, db_to_linear(15.0), 2));
  CHECK(grid.detection(2, one) == pd_awgn(config.detection, 1.0, 1));
  CHECK(grid.false_alarm(2) == 1e-7);

  config.detection_mode = DetectionMode::exact;
  const DetectionModel exact(config, snr);
  const double g1 = std::pow(10.0, (15.0 - 23.0 * std::log10(2.0)) / 10.0);
  CHECK(exact.detection(1, one) == doctest::Approx(pd_awgn(config.detection, g1, 1)).epsilon(1e-14));
  CHECK(grid.detection(1, one) == pd_awgn(config.detection, db_to_linear(8.0), 1));

  config.fading = Fading::rayleigh;
  config.detection_mode = DetectionMode::grid;
  const DetectionModel ray(config, snr);
  const double p0 = pd_rayleigh_single(config.detection, db_to_linear(15.0));
  const double p1 = pd_rayleigh_single(config.detection, db_to_linear(8.0));
  CHECK(ray.detection(0, one) == p0);
  CHECK(ray.detection(0, two) == doctest::Approx(1.0 - (1.0 - p0) * (1.0 - p1)).epsilon(1e-15));
  CHECK(ray.false_alarm(1) == 0.83);
}

TEST_CASE("config validation") {
  SimConfig config;
  CHECK_NOTHROW(config.validate());
  config.n_wn = 9;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = {};
  config.placement.nodes[3] = config.placement.jammer;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = {};
  config.horizon = 0;
  CHECK_THROWS_AS(run(config, 1), std::invalid_argument);
  config = {};
  config.n_fb = 0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("switch parsers") {
  CHECK(parse_detection_mode("exact") == DetectionMode::exact);
  CHECK(parse_cohort_scope("global") == CohortScope::global);
  CHECK(parse_verdict_draw("per_node") == VerdictDraw::per_node);
  CHECK(parse_transmit_choice("lowest") == TransmitChoice::lowest);
  CHECK_THROWS_AS(parse_detection_mode("fast"), std::invalid_argument);
  CHECK(to_string(Outcome::skipped) == "skipped");
}

}
