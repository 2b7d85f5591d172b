#include "cssim/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace cssim {

namespace {

struct StepCounts {
  std::uint64_t jammed_channels = 0;
  std::uint64_t detected = 0;
  std::uint64_t successful = 0;
  std::uint64_t attempted = 0;
};

StepCounts count_step(const StepRecord& step) {
  StepCounts counts;
  std::vector<bool> detected(step.truth.size(), false);
  for (const auto& node : step.nodes) {
    if (node.observation == Occupancy::occupied) detected[node.action] = true;
    if (node.outcome != Outcome::skipped) {
      ++counts.attempted;
      if (node.outcome == Outcome::successful) ++counts.successful;
    }
  }
  for (std::size_t c = 0; c < step.truth.size(); ++c) {
    if (step.truth[c] == Occupancy::occupied) {
      ++counts.jammed_channels;
      if (detected[c]) ++counts.detected;
    }
  }
  return counts;
}

void check_upto(const RunRecord& record, std::size_t upto) {
  if (upto > record.steps.size()) throw std::out_of_range("metric prefix longer than the run");
}

}  // namespace

Ratio jammer_detection_ratio(const RunRecord& record, std::size_t upto) {
  check_upto(record, upto);
  Ratio ratio;
  for (std::size_t t = 0; t < upto; ++t) {
    const auto counts = count_step(record.steps[t]);
    ratio.numerator += counts.detected;
    ratio.denominator += counts.jammed_channels;
  }
  return ratio;
}

Ratio transmission_success_rate(const RunRecord& record, std::size_t upto) {
  check_upto(record, upto);
  Ratio ratio;
  for (std::size_t t = 0; t < upto; ++t) {
    const auto counts = count_step(record.steps[t]);
    ratio.numerator += counts.successful;
    ratio.denominator += counts.attempted;
  }
  return ratio;
}

RunCurves metric_curves(const RunRecord& record) {
  RunCurves curves;
  curves.jdr.reserve(record.steps.size());
  curves.tsr.reserve(record.steps.size());
  Ratio jdr;
  Ratio tsr;
  for (const auto& step : record.steps) {
    const auto counts = count_step(step);
    jdr.numerator += counts.detected;
    jdr.denominator += counts.jammed_channels;
    tsr.numerator += counts.successful;
    tsr.denominator += counts.attempted;
    curves.jdr.push_back(jdr.value());
    curves.tsr.push_back(tsr.value());
  }
  return curves;
}

SampleSummary summarize(std::span<const double> values) {
  SampleSummary summary;
  if (values.empty()) return summary;
  double sum = 0.0;
  for (double v : values) sum += v;
  summary.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double squares = 0.0;
    for (double v : values) squares += (v - summary.mean) * (v - summary.mean);
    summary.stddev = std::sqrt(squares / static_cast<double>(values.size() - 1));
  }
  return summary;
}

BatchResult aggregate(std::span<const RunCurves> runs) {
  BatchResult result;
  if (runs.empty()) return result;
  const std::size_t length = runs.front().jdr.size();
  for (const auto& curves : runs) {
    if (curves.jdr.size() != length || curves.tsr.size() != length) {
      throw std::invalid_argument("aggregate: runs of different length");
    }
  }
  std::vector<double> column(runs.size());
  auto reduce = [&](auto member, std::vector<double>& mean, std::vector<double>& stddev) {
    mean.resize(length);
    stddev.resize(length);
    for (std::size_t t = 0; t < length; ++t) {
      for (std::size_t r = 0; r < runs.size(); ++r) column[r] = (runs[r].*member)[t];
      const auto summary = summarize(column);
      mean[t] = summary.mean;
      stddev[t] = summary.stddev;
    }
  };
  reduce(&RunCurves::jdr, result.jdr_mean, result.jdr_std);
  reduce(&RunCurves::tsr, result.tsr_mean, result.tsr_std);
  for (const auto& curves : runs) {
    result.final_jdr.push_back(length ? curves.jdr.back() : 0.0);
    result.final_tsr.push_back(length ? curves.tsr.back() : 0.0);
  }
  result.final_jdr_summary = summarize(result.final_jdr);
  result.final_tsr_summary = summarize(result.final_tsr);
  return result;
}

BatchResult run_batch(const SimConfig& config, std::span<const std::uint64_t> run_seeds, unsigned jobs) {
  config.validate();
  std::vector<RunCurves> curves(run_seeds.size());
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(1, run_seeds.size())));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t r = next++; r < run_seeds.size(); r = next++) {
      try {
        curves[r] = metric_curves(run(config, run_seeds[r]));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < jobs; ++k) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  auto result = aggregate(curves);
  result.run_seeds.assign(run_seeds.begin(), run_seeds.end());
  return result;
}

BatchResult run_batch(const SimConfig& config, unsigned jobs) {
  std::vector<std::uint64_t> seeds;
  seeds.reserve(config.replications);
  for (std::size_t r = 0; r < config.replications; ++r) seeds.push_back(replication_seed(config.seed, r));
  return run_batch(config, seeds, jobs);
}

}  // namespace cssim
