#pragma once

#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace cssim {

enum class Fading { awgn, rayleigh };

std::string_view to_string(Fading kind);
Fading parse_fading(std::string_view text);

/// Energy-detector parameters. `threshold` is the decision threshold on the
/// accumulated energy, `noncentrality` scales the SNR into the non-centrality
/// of the test statistic and `n_samples` is the per-node sample count.
struct DetectionParams {
  double sigma2 = 1.0;
  double noncentrality = 2.0;
  double threshold = 12.1;
  int n_samples = 10;

  /// Throws std::invalid_argument unless sigma2 > 0, noncentrality > 0,
  /// threshold >= 0 and n_samples is even and >= 4.
  void validate() const;

  bool operator==(const DetectionParams&) const = default;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

/// Generalized Marcum Q-function Q_order(alpha, beta): upper tail beyond beta^2
/// of a non-central chi-square law with 2*order degrees of freedom and
/// non-centrality alpha^2.
///
/// Evaluated as the Poisson mixture of regularized upper incomplete gamma
/// functions, summed until the remaining Poisson mass is below 1e-14.
/// Throws std::domain_error for order < 0.5, negative or non-finite arguments.
double marcum_q(double order, double alpha, double beta);

/// Detection probability of m cooperating detectors under AWGN:
/// Q_{m N / 2}(sqrt(a * snr / sigma2), sqrt(threshold / sigma2)).
double pd_awgn(const DetectionParams& params, double snr, int diversity);

/// Detection probability averaged over Rayleigh fading (exponentially
/// distributed SNR with mean `mean_snr`) for a single detector.
///
/// Uses the closed form with its difference term rewritten as the tail of the
/// exponential series, so that no cancellation occurs as mean_snr -> 0; at
/// mean_snr == 0 this is exactly the central chi-square tail.
double pd_rayleigh_single(const DetectionParams& params, double mean_snr);

/// 1 - prod(1 - p_i). Throws std::domain_error for an empty list or any
/// entry outside [0, 1].
double pd_rayleigh_combined(std::span<const double> singles);

/// False-alarm probability per diversity order. Orders above the last listed
/// entry reuse the last entry.
class FalseAlarmTable {
 public:
  /// Tables are indexed by m - 1. Each must be non-empty with values in [0, 1].
  FalseAlarmTable(std::vector<double> awgn, std::vector<double> rayleigh);

  static FalseAlarmTable defaults();

  double lookup(Fading kind, int diversity) const;
  const std::vector<double>& entries(Fading kind) const;

  bool operator==(const FalseAlarmTable&) const = default;

 private:
  std::vector<double> awgn_;
  std::vector<double> rayleigh_;
};

inline double pfa(const FalseAlarmTable& table, Fading kind, int diversity) {
  return table.lookup(kind, diversity);
}

/// Inclusive SNR axis in dB with a fixed step.
struct SnrAxis {
  double min_db = 0.0;
  double max_db = 15.0;
  double step_db = 1.0;

  std::size_t size() const;
  double at(std::size_t index) const { return min_db + step_db * static_cast<double>(index); }
  /// Index of the nearest axis point after clamping `db` to [min_db, max_db].
  std::size_t snap(double db) const;

  bool operator==(const SnrAxis&) const = default;
};

/// Detection-probability look-up table over (SNR dB, diversity order).
/// Immutable once built; rows are diversity orders 1..max_diversity().
class ProbabilityGrid {
 public:
  /// Validates shape, range [0, 1] and monotonicity along both axes.
  ProbabilityGrid(SnrAxis axis, std::vector<std::vector<double>> rows);

  const SnrAxis& axis() const { return axis_; }
  int max_diversity() const { return static_cast<int>(rows_.size()); }
  double at(std::size_t snr_index, int diversity) const;
  /// Nearest-neighbour look-up: SNR snapped to the axis, diversity clamped to
  /// [1, max_diversity()].
  double lookup(double snr_db, int diversity) const;
  const std::vector<std::vector<double>>& rows() const { return rows_; }

  /// CSV layout: header "m,<snr_0>,...,<snr_n>", then one "m,p,...,p" row per
  /// diversity order. Probabilities are written with 17 significant digits so
  /// that a re-imported grid is bit-identical.
  void write_csv(std::ostream& out) const;
  static ProbabilityGrid read_csv(std::istream& in);

  bool operator==(const ProbabilityGrid&) const = default;

 private:
  SnrAxis axis_;
  std::vector<std::vector<double>> rows_;
};

ProbabilityGrid build_awgn_grid(const DetectionParams& params, SnrAxis axis = {}, int max_diversity = 6);
/// Single-row (m = 1) Rayleigh table.
ProbabilityGrid build_rayleigh_grid(const DetectionParams& params, SnrAxis axis = {});

}  // namespace cssim

