#include <doctest.h>

#include <stdexcept>
#include <tuple>

#include "cssim/metrics.hpp"

using namespace cssim;

namespace {

// One node, one channel; each entry is (truth occupied?, sensed occupied?, outcome).
RunRecord scripted(const std::vector<std::tuple<bool, bool, Outcome>>& script) {
  RunRecord record;
  record.config.n_wn = 1;
  record.config.n_fb = 1;
  long t = 0;
  for (const auto& [jammed, seen, outcome] : script) {
    StepRecord step;
    step.time = t++;
    step.truth = {jammed ? Occupancy::occupied : Occupancy::vacant};
    NodeStep node;
    node.observation = seen ? Occupancy::occupied : Occupancy::vacant;
    node.outcome = outcome;
    if (outcome != Outcome::skipped) node.transmit = 0;
    step.nodes.push_back(node);
    record.steps.push_back(step);
  }
  return record;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("all skipped reports zero with an empty denominator") {
  const auto r = scripted({{true, true, Outcome::skipped}, {false, false, Outcome::skipped}});
  const auto tsr = transmission_success_rate(r, 2);
  CHECK(tsr.empty_denominator());
  CHECK(tsr.value() == 0.0);
}

TEST_CASE("all successful is one; alternating is one half") {
  CHECK(transmission_success_rate(scripted({{false, false, Outcome::successful}, {false, false, Outcome::successful}}), 2).value() == 1.0);
  const auto alt = scripted({{false, false, Outcome::successful}, {true, false, Outcome::jammed},
                             {false, false, Outcome::successful}, {true, false, Outcome::jammed}});
  CHECK(transmission_success_rate(alt, 4).value() == 0.5);
}

TEST_CASE("detection credit needs a raw occupied observation") {
  const auto r = scripted({{true, true, Outcome::skipped},
                           {true, false, Outcome::jammed},
                           {false, true, Outcome::skipped},
                           {true, true, Outcome::skipped}});
  const auto jdr = jammer_detection_ratio(r, 4);
  CHECK(jdr.numerator == 2);
  CHECK(jdr.denominator == 3);
  CHECK(jammer_detection_ratio(r, 0).empty_denominator());
  CHECK(jammer_detection_ratio(r, 2).value() == 0.5);
  CHECK_THROWS_AS(jammer_detection_ratio(r, 5), std::out_of_range);
  CHECK_THROWS_AS(transmission_success_rate(r, 5), std::out_of_range);
}

TEST_CASE("curves accumulate") {
  const auto r = scripted({{true, true, Outcome::skipped}, {true, false, Outcome::successful}, {true, true, Outcome::jammed}});
  const auto c = metric_curves(r);
  CHECK(c.jdr == std::vector<double>{1.0, 0.5, 2.0 / 3.0});
  CHECK(c.tsr == std::vector<double>{0.0, 1.0, 0.5});
}

TEST_CASE("summaries") {
  const std::vector<double> one{0.3};
  CHECK(summarize(one).mean == 0.3);
  CHECK(summarize(one).stddev == 0.0);
  const std::vector<double> two{1.0, 3.0};
  CHECK(summarize(two).mean == 2.0);
  CHECK(summarize(two).stddev == doctest::Approx(std::sqrt(2.0)));
  const std::vector<RunCurves> constant(4, RunCurves{{0.25, 0.25}, {0.75, 0.75}});
  const auto b = aggregate(constant);
  CHECK(b.jdr_mean == std::vector<double>{0.25, 0.25});
  CHECK(b.tsr_std == std::vector<double>{0.0, 0.0});
  const std::vector<RunCurves> ragged{RunCurves{{0.1}, {0.1}}, RunCurves{{0.1, 0.2}, {0.1, 0.2}}};
  CHECK_THROWS_AS(aggregate(ragged), std::invalid_argument);
}

TEST_CASE("batch of one equals the single run") {
  SimConfig config;
  config.horizon = 200;
  config.replications = 1;
  const auto batch = run_batch(config, 1);
  const auto single = metric_curves(run(config));
  CHECK(batch.jdr_mean == single.jdr);
  CHECK(batch.tsr_mean == single.tsr);
  CHECK(batch.final_jdr_summary.stddev == 0.0);
}

TEST_CASE("repeated seeds give identical pairs; thread count is irrelevant") {
  SimConfig config;
  config.horizon = 150;
  const std::vector<std::uint64_t> seeds{42, 42, 7, 9, 11};
  const auto serial = run_batch(config, seeds, 1);
  const auto parallel = run_batch(config, seeds, 3);
  CHECK(serial.final_jdr[0] == serial.final_jdr[1]);
  CHECK(serial.final_tsr[0] == serial.final_tsr[1]);
  CHECK(serial.jdr_mean == parallel.jdr_mean);
  CHECK(serial.tsr_std == parallel.tsr_std);
  CHECK(serial.final_tsr == parallel.final_tsr);
}

}
