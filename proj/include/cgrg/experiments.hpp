#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cgrg/model.hpp"

namespace cgrg {

struct SweepRow {
  std::size_t n = 0;
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  std::string statistic;
  double value = 0.0;
};

struct SkipRecord {
  std::size_t n = 0;
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  std::string reason;
};

struct Aggregate {
  std::size_t n = 0;
  std::string statistic;
  double mean = 0.0;
  double sd = 0.0;  ///< sample standard deviation (n - 1 denominator)
  double se = 0.0;  ///< sd / sqrt(count)
  std::size_t count = 0;
};

/// Raw per-replicate rows plus per-(n, statistic) aggregates.
/// Rows are sorted by (n, replicate, statistic).
struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<SkipRecord> skipped;
  std::vector<Aggregate> aggregates;

  static std::vector<Aggregate> aggregate(std::span<const SweepRow> rows);
  const Aggregate& find(std::size_t n, const std::string& statistic) const;
  /// Columns n, replicate, seed, statistic, value.
  std::string to_csv() const;
  /// {"aggregates":[...], "skipped":[...]}
  std::string to_json() const;
};

/// Seed of replicate `rep` at size n; independent of thread scheduling.
std::uint64_t replicate_seed(std::uint64_t master_seed, std::size_t n, std::size_t rep);

struct SweepOptions {
  /// Band half-width for the in-probability fraction; self-calibrated when empty.
  std::optional<double> epsilon;
  unsigned threads = 0;
};

struct AepPoint {
  std::size_t n = 0;
  std::size_t replicates = 0;
  double mean_statistic = 0.0;
  double expected_statistic = 0.0;  ///< closed-form E[-ln P] / (n (ln n)^2)
  double abs_gap = 0.0;             ///< |mean_statistic - limit|
  double mean_neg_log_likelihood = 0.0;
  double se_neg_log_likelihood = 0.0;
  double expected_neg_log_likelihood = 0.0;
  double z_score = 0.0;  ///< (mean - expected) / se for -ln P
  double fraction_outside = 0.0;  ///< share of replicates with |statistic - limit| >= epsilon
};

struct AepSweep {
  SweepResult sweep;
  double limit = 0.0;
  double epsilon = 0.0;
  std::vector<AepPoint> points;

  std::string to_json() const;
};

/// Per replicate: aep_statistic, neg_log_likelihood and the closed-form
/// expected_neg_log_likelihood. The default epsilon is half the gap between
/// the closed-form expected statistic and the limit at the largest valid n.
AepSweep aep_sweep(const ModelSpec& spec, std::span<const std::size_t> ns, std::size_t reps,
                   std::uint64_t master_seed, const SweepOptions& options = {});

struct WllnPoint {
  std::size_t n = 0;
  std::size_t replicates = 0;
  double mean_l1_deviation = 0.0;
  double mean_l2_deviation = 0.0;          ///< against rho(d) lambda nu x nu
  double mean_l2_literal_deviation = 0.0;  ///< against lambda nu x nu
};

struct WllnSweep {
  SweepResult sweep;
  /// sup_{a,b} |rho(d) - 1| lambda(a,b) nu(a) nu(b): where the literal deviation settles.
  double literal_limit = 0.0;
  std::vector<WllnPoint> points;

  std::string to_json() const;
};

/// Per replicate: sup_l1_deviation, sup_l2_deviation, sup_l2_literal_deviation.
WllnSweep wlln_sweep(const ModelSpec& spec, std::span<const std::size_t> ns, std::size_t reps,
                     std::uint64_t master_seed, const SweepOptions& options = {});

struct FEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Monte Carlo estimate of F(t) = P(|U1 - U2| <= t) for independent uniform
/// points in [0,1]^d, with the binomial standard error.
FEstimate mc_estimate_F(int d, double t, MetricMode mode, std::size_t samples, std::uint64_t seed);

struct RateScanReport {
  std::size_t trials = 0;
  std::size_t negative_count = 0;          ///< random trials with I1 < 0
  double min_random_i1 = 0.0;
  double max_random_i1 = 0.0;
  double max_equality_i1 = 0.0;            ///< over constructed equality cases
  double min_scaled_margin = 0.0;          ///< min over x1.5 cases of I1 - phi bound
  double min_small_perturbation_i1 = 0.0;  ///< min I1 over single-entry perturbations of size >= 1e-3
  double max_i2_on_manifold_error = 0.0;   ///< |I2 - H(omega || nu)| on the constraint set
  std::size_t i2_off_manifold_finite = 0;  ///< off-manifold cases where I2 was finite
  double tolerance = 1e-9;

  bool passed() const;
  std::string to_json() const;
};

/// Randomized check of the rate-function zero sets.
RateScanReport rate_scan(const ProbMeasure& nu, const RadiusKernel& kernel, int d, std::size_t trials,
                         std::uint64_t seed, double tol = 1e-9);

}  // namespace cgrg
