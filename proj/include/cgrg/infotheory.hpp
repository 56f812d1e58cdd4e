#pragma once

#include <cstddef>
#include <limits>
#include <string>

#include "cgrg/model.hpp"
#include "cgrg/types.hpp"

// All entropies are in nats; bits appear only in entropy_bits and
// code_length_bits.

namespace cgrg {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// H(omega || nu) = sum omega ln(omega / nu), with 0 ln 0 = 0 and +inf on a
/// support violation.
double rel_entropy_prob(const ProbMeasure& omega, const ProbMeasure& nu);

/// Same sum for finite measures on pairs. May be negative when the masses differ.
double rel_entropy_finite(const FiniteMeasure2& pi, const FiniteMeasure2& reference);

/// H(pi || rho(d) lambda omega x omega) + rho(d) ||lambda omega x omega|| - ||pi||.
/// Nonnegative; zero exactly when pi equals the scaled product measure.
double near_entropy(const FiniteMeasure2& pi, const ProbMeasure& omega, const RadiusKernel& kernel, int d);

/// Rate function at speed n log n: half the near entropy.
double rate_i1(const ProbMeasure& omega, const FiniteMeasure2& pi, const RadiusKernel& kernel, int d);

/// Rate function at speed n: H(omega || nu) when pi lies within tol (max
/// entry) of rho(d) lambda omega x omega, +inf otherwise.
double rate_i2(const ProbMeasure& omega, const FiniteMeasure2& pi, const ProbMeasure& nu, const RadiusKernel& kernel,
               int d, double tol = 1e-9);

/// ln P(x) under the geometry-free product law, split by factor.
struct LogLikelihood {
  double colors = 0.0;     ///< sum over vertices of ln nu(color)
  double edges = 0.0;      ///< sum over edges of ln p_n
  double non_edges = 0.0;  ///< sum over unlinked pairs of ln(1 - p_n)
  /// Set when the configuration has probability zero; total() is then -inf.
  std::string diagnostic;

  double total() const { return diagnostic.empty() ? colors + edges + non_edges : -kInfinity; }
};

/// O(n + |E| + K^2) evaluation from color counts and per-color-pair edge counts.
LogLikelihood log_likelihood_terms(const Instance& instance);
double log_likelihood(const Instance& instance);
/// All-pairs evaluation of the same quantity.
double log_likelihood_naive(const Instance& instance);

/// -ln P(x) / (n (ln n)^2); +inf when P(x) = 0.
double aep_statistic(const Instance& instance);

/// (rho(d) / 2) sum_{a,b} nu(a) lambda(a,b) nu(b).
double aep_limit(const ProbMeasure& nu, const RadiusKernel& kernel, int d);

/// sum_{a,b} nu(a) lambda(a,b) nu(b) / (2 ln 2).
double entropy_bits(const ProbMeasure& nu, const RadiusKernel& kernel);

/// n (ln n)^2 rho(d) entropy_bits; requires n >= 2.
double code_length_bits(std::size_t n, const ProbMeasure& nu, const RadiusKernel& kernel, int d);

/// -sum nu ln nu.
double shannon_entropy(const ProbMeasure& nu);
/// -p ln p - (1-p) ln(1-p).
double binary_entropy(double p);

/// Exact E[-ln P(X)] under the product law:
/// n H(nu) + (n(n-1)/2) sum_{a,b} nu(a) nu(b) h(p_n(a,b)).
double expected_neg_log_likelihood(const ModelSpec& spec, std::size_t n);

/// The four terms of -ln P(x) / (n (ln n)^2) written against L1 and L2.
/// Only the link term survives as n grows; the terms sum to aep_statistic.
struct AepDecomposition {
  double sensor = 0.0;    ///< -sum L1(a) ln nu(a) / (ln n)^2
  double link = 0.0;      ///< -1/2 sum L2(a,b) ln(p/(1-p)) / ln n
  double pairs = 0.0;     ///< -1/2 sum L1(a) L1(b) ln(1-p) / ((ln n)^2 / n)
  double diagonal = 0.0;  ///< +1/2 sum L1(a) ln(1-p(a,a)) / (ln n)^2
  double total() const { return sensor + link + pairs + diagonal; }
};

AepDecomposition aep_decomposition(const Instance& instance);

}  // namespace cgrg
