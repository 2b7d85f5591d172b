#include "cssim/sensing_math.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <fmt/format.h>

namespace cssim {

namespace {

constexpr double kPoissonTailTolerance = 1e-14;
constexpr double kMonotoneSlack = 1e-12;

double checked_probability(double p, const char* where) {
  if (!(p >= -1e-15 && p <= 1.0 + 1e-15)) {
    throw std::logic_error(fmt::format("{}: probability {} outside [0, 1]", where, p));
  }
  return std::clamp(p, 0.0, 1.0);
}

double parse_double(const std::string& cell) {
  std::size_t used = 0;
  const double value = std::stod(cell, &used);
  if (used != cell.size()) throw std::invalid_argument("trailing characters in '" + cell + "'");
  return value;
}

}  // namespace

std::string_view to_string(Fading kind) { return kind == Fading::awgn ? "awgn" : "rayleigh"; }

Fading parse_fading(std::string_view text) {
  if (text == "awgn") return Fading::awgn;
  if (text == "rayleigh") return Fading::rayleigh;
  throw std::invalid_argument(fmt::format("unknown fading kind '{}' (expected awgn or rayleigh)", text));
}

void DetectionParams::validate() const {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw std::invalid_argument("sigma2 must be positive");
  if (!(noncentrality > 0.0) || !std::isfinite(noncentrality)) {
    throw std::invalid_argument("noncentrality must be positive");
  }
  if (!(threshold >= 0.0) || !std::isfinite(threshold)) throw std::invalid_argument("threshold must be >= 0");
  if (n_samples < 4 || n_samples % 2 != 0) throw std::invalid_argument("n_samples must be even and >= 4");
}

double marcum_q(double order, double alpha, double beta) {
  if (!std::isfinite(order) || order < 0.5) {
    throw std::domain_error(fmt::format("marcum_q: order {} must be >= 0.5", order));
  }
  if (!std::isfinite(alpha) || alpha < 0.0) throw std::domain_error("marcum_q: alpha must be finite and >= 0");
  if (!std::isfinite(beta) || beta < 0.0) throw std::domain_error("marcum_q: beta must be finite and >= 0");
  if (beta == 0.0) return 1.0;

  const double mean = 0.5 * alpha * alpha;  // Poisson mean of the mixture
  const double x = 0.5 * beta * beta;
  if (mean == 0.0) return boost::math::gamma_q(order, x);
  const double log_x = std::log(x);
  const double log_mean = std::log(mean);

  // Poisson weights up to the point where the remaining mass is negligible.
  std::vector<double> weights;
  for (double log_weight = -mean;;) {
    weights.push_back(std::exp(log_weight));
    const double k = static_cast<double>(weights.size());
    log_weight += log_mean - std::log(k);
    const double ratio = mean / (k + 1.0);
    if (ratio < 1.0 && std::exp(log_weight) / (1.0 - ratio) < kPoissonTailTolerance) break;
  }
  const auto top = static_cast<double>(weights.size() - 1);

  if (x >= order + mean) {
    // Upper tail: Q(a + 1, x) = Q(a, x) + x^a e^{-x} / Gamma(a + 1), summed upward.
    double upper = boost::math::gamma_q(order, x);
    double log_increment = -x + order * log_x - std::lgamma(order + 1.0);
    double sum = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      sum += weights[k] * upper;
      upper = std::min(1.0, upper + std::exp(log_increment));
      log_increment += log_x - std::log(order + static_cast<double>(k) + 1.0);
    }
    return std::min(sum, 1.0);
  }

  // Bulk: 1 - Q from the lower gamma P, summed downward with
  // P(a - 1, x) = P(a, x) + x^(a-1) e^{-x} / Gamma(a), again only additions.
  double lower = boost::math::gamma_p(order + top, x);
  double log_increment = -x + (order + top - 1.0) * log_x - std::lgamma(order + top);
  double complement = 0.0;
  for (std::size_t k = weights.size(); k-- > 0;) {
    complement += weights[k] * lower;
    if (k == 0) break;
    lower = std::min(1.0, lower + std::exp(log_increment));
    log_increment += std::log(order + static_cast<double>(k) - 1.0) - log_x;
  }
  return std::clamp(1.0 - complement, 0.0, 1.0);
}

double pd_awgn(const DetectionParams& params, double snr, int diversity) {
  if (diversity < 1) throw std::domain_error("pd_awgn: diversity order must be >= 1");
  if (!(snr >= 0.0)) throw std::domain_error("pd_awgn: snr must be >= 0");
  const double order = diversity * params.n_samples / 2.0;
  const double p = marcum_q(order, std::sqrt(params.noncentrality * snr / params.sigma2),
                            std::sqrt(params.threshold / params.sigma2));
  return checked_probability(p, "pd_awgn");
}

double pd_rayleigh_single(const DetectionParams& params, double mean_snr) {
  if (!(mean_snr >= 0.0) || !std::isfinite(mean_snr)) {
    throw std::domain_error("pd_rayleigh_single: mean snr must be finite and >= 0");
  }
  const int half = params.n_samples / 2;
  const double half_threshold = params.threshold / (2.0 * params.sigma2);
  const double decay = std::exp(-half_threshold);

  // e^{-L} sum_{i=0}^{N/2-2} L^i / i!
  double term = 1.0;
  double head = 0.0;
  for (int i = 0; i <= half - 2; ++i) {
    head += term;
    term *= half_threshold / (i + 1);
  }
  head *= decay;
  // `term` is now L^{N/2-1} / (N/2-1)!

  // With r = (2 sigma2 + a g) / (a g) and y = L / r, the bracketed difference
  // times r^{N/2-1} equals e^{-L} L^{N/2-1} sum_{j>=0} y^j / (N/2-1+j)!.
  const double faded = params.noncentrality * mean_snr;
  const double y = half_threshold * faded / (2.0 * params.sigma2 + faded);
  double tail = 0.0;
  double tail_term = term;
  for (int j = 0; j < 100000; ++j) {
    tail += tail_term;
    if (tail_term <= 1e-17 * tail) break;
    tail_term *= y / (half - 1 + j + 1);
  }
  return checked_probability(head + decay * tail, "pd_rayleigh_single");
}

double pd_rayleigh_combined(std::span<const double> singles) {
  if (singles.empty()) throw std::domain_error("pd_rayleigh_combined: empty list");
  double miss = 1.0;
  for (double p : singles) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("pd_rayleigh_combined: entry outside [0, 1]");
    miss *= 1.0 - p;
  }
  return 1.0 - miss;
}

FalseAlarmTable::FalseAlarmTable(std::vector<double> awgn, std::vector<double> rayleigh)
    : awgn_(std::move(awgn)), rayleigh_(std::move(rayleigh)) {
  for (const auto* table : {&awgn_, &rayleigh_}) {
    if (table->empty()) throw std::invalid_argument("false-alarm table must not be empty");
    for (double p : *table) {
      if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("false-alarm probability outside [0, 1]");
    }
  }
}

FalseAlarmTable FalseAlarmTable::defaults() {
  return FalseAlarmTable({0.0015, 1e-7}, {0.83, 0.32, 0.03, 0.003, 0.001});
}

double FalseAlarmTable::lookup(Fading kind, int diversity) const {
  if (diversity < 1) throw std::domain_error("false-alarm lookup: diversity order must be >= 1");
  const auto& table = entries(kind);
  const auto index = std::min(static_cast<std::size_t>(diversity - 1), table.size() - 1);
  return table[index];
}

const std::vector<double>& FalseAlarmTable::entries(Fading kind) const {
  return kind == Fading::awgn ? awgn_ : rayleigh_;
}

std::size_t SnrAxis::size() const {
  return static_cast<std::size_t>(std::llround((max_db - min_db) / step_db)) + 1;
}

std::size_t SnrAxis::snap(double db) const {
  const double clamped = std::clamp(db, min_db, max_db);
  const auto index = static_cast<std::size_t>(std::llround((clamped - min_db) / step_db));
  return std::min(index, size() - 1);
}

ProbabilityGrid::ProbabilityGrid(SnrAxis axis, std::vector<std::vector<double>> rows)
    : axis_(axis), rows_(std::move(rows)) {
  if (!(axis_.step_db > 0.0) || axis_.max_db < axis_.min_db) throw std::invalid_argument("invalid SNR axis");
  if (rows_.empty()) throw std::invalid_argument("probability grid needs at least one diversity row");
  const std::size_t width = axis_.size();
  for (std::size_t m = 0; m < rows_.size(); ++m) {
    const auto& row = rows_[m];
    if (row.size() != width) throw std::invalid_argument("probability grid row does not match the SNR axis");
    for (std::size_t k = 0; k < width; ++k) {
      if (!(row[k] >= 0.0 && row[k] <= 1.0)) throw std::invalid_argument("grid entry outside [0, 1]");
      if (k > 0 && row[k] + kMonotoneSlack < row[k - 1]) {
        throw std::invalid_argument("grid entries must be non-decreasing in SNR");
      }
      if (m > 0 && row[k] + kMonotoneSlack < rows_[m - 1][k]) {
        throw std::invalid_argument("grid entries must be non-decreasing in diversity order");
      }
    }
  }
}

double ProbabilityGrid::at(std::size_t snr_index, int diversity) const {
  if (diversity < 1 || diversity > max_diversity()) throw std::out_of_range("grid diversity order out of range");
  return rows_.at(static_cast<std::size_t>(diversity - 1)).at(snr_index);
}

double ProbabilityGrid::lookup(double snr_db, int diversity) const {
  const int m = std::clamp(diversity, 1, max_diversity());
  return rows_[static_cast<std::size_t>(m - 1)][axis_.snap(snr_db)];
}

void ProbabilityGrid::write_csv(std::ostream& out) const {
  out << 'm';
  for (std::size_t k = 0; k < axis_.size(); ++k) out << ',' << fmt::format("{}", axis_.at(k));
  out << '\n';
  for (std::size_t m = 0; m < rows_.size(); ++m) {
    out << (m + 1);
    for (double p : rows_[m]) out << ',' << fmt::format("{:.17g}", p);
    out << '\n';
  }
}

ProbabilityGrid ProbabilityGrid::read_csv(std::istream& in) {
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream stream(line);
    std::string cell;
    while (std::getline(stream, cell, ',')) cells.push_back(cell);
    return cells;
  };
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("grid csv: missing header");
  const auto header = split(line);
  if (header.size() < 2 || header[0] != "m") throw std::invalid_argument("grid csv: malformed header");
  std::vector<double> snr;
  for (std::size_t k = 1; k < header.size(); ++k) snr.push_back(parse_double(header[k]));
  SnrAxis axis{snr.front(), snr.back(), snr.size() > 1 ? snr[1] - snr[0] : 1.0};
  if (axis.size() != snr.size()) throw std::invalid_argument("grid csv: SNR header is not evenly spaced");
  for (std::size_t k = 0; k < snr.size(); ++k) {
    if (std::abs(axis.at(k) - snr[k]) > 1e-9) throw std::invalid_argument("grid csv: SNR header is not evenly spaced");
  }

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) throw std::invalid_argument("grid csv: row width mismatch");
    if (std::stoi(cells[0]) != static_cast<int>(rows.size()) + 1) {
      throw std::invalid_argument("grid csv: diversity rows must be 1, 2, ...");
    }
    std::vector<double> row;
    for (std::size_t k = 1; k < cells.size(); ++k) row.push_back(parse_double(cells[k]));
    rows.push_back(std::move(row));
  }
  return ProbabilityGrid(axis, std::move(rows));
}

ProbabilityGrid build_awgn_grid(const DetectionParams& params, SnrAxis axis, int max_diversity) {
  params.validate();
  if (max_diversity < 1) throw std::invalid_argument("max_diversity must be >= 1");
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(max_diversity));
  for (int m = 1; m <= max_diversity; ++m) {
    auto& row = rows[static_cast<std::size_t>(m - 1)];
    for (std::size_t k = 0; k < axis.size(); ++k) row.push_back(pd_awgn(params, db_to_linear(axis.at(k)), m));
  }
  return ProbabilityGrid(axis, std::move(rows));
}

ProbabilityGrid build_rayleigh_grid(const DetectionParams& params, SnrAxis axis) {
  params.validate();
  std::vector<double> row;
  for (std::size_t k = 0; k < axis.size(); ++k) row.push_back(pd_rayleigh_single(params, db_to_linear(axis.at(k))));
  return ProbabilityGrid(axis, {std::move(row)});
}

}  // namespace cssim
