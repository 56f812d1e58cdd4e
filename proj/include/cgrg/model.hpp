#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cgrg/geometry.hpp"
#include "cgrg/types.hpp"

namespace cgrg {

/// Ordered set of distinct color names.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);

  std::size_t size() const { return symbols_.size(); }
  const std::string& symbol(Color c) const { return symbols_.at(c); }
  Color index_of(const std::string& name) const;
  const std::vector<std::string>& symbols() const { return symbols_; }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> symbols_;
};

/// Color law: a probability vector with strictly positive entries.
class SensorLaw {
 public:
  SensorLaw() = default;
  explicit SensorLaw(std::vector<double> probs);

  std::size_t size() const { return p_.size(); }
  double operator[](Color a) const { return p_[a]; }
  const ProbMeasure& measure() const { return p_; }

  friend bool operator==(const SensorLaw&, const SensorLaw&) = default;

 private:
  ProbMeasure p_;
};

/// Symmetric, nonnegative, not identically zero matrix lambda(a, b) setting
/// the radius scale r_n(a,b) = (lambda(a,b) log n / n)^{1/d}.
class RadiusKernel {
 public:
  RadiusKernel() = default;
  explicit RadiusKernel(SquareMatrix lambda);

  std::size_t size() const { return m_.size(); }
  double operator()(Color a, Color b) const { return m_(a, b); }
  const SquareMatrix& matrix() const { return m_; }
  /// Entrywise multiple; c must be positive.
  RadiusKernel scaled(double c) const;

  friend bool operator==(const RadiusKernel&, const RadiusKernel&) = default;

 private:
  SquareMatrix m_;
};

struct ModelSpec {
  int d = 2;
  Alphabet alphabet;
  SensorLaw nu;
  RadiusKernel lambda;
  MetricMode metric = MetricMode::Torus;

  std::size_t colors() const { return alphabet.size(); }
  /// Throws InvalidArgument on dimension or size mismatches.
  void validate() const;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

/// Builds and validates a spec; symbols default to "c0", "c1", ... when empty.
ModelSpec make_spec(int d, std::vector<double> nu, const std::vector<std::vector<double>>& lambda,
                    MetricMode metric = MetricMode::Torus, std::vector<std::string> symbols = {});

struct Edge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// A realized colored geometric graph. Edges are (u, v) with u < v, sorted.
struct Instance {
  ModelSpec spec;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  PointSet positions;
  std::vector<Color> colors;
  std::vector<Edge> edges;
};

/// r_n(a,b) = (lambda(a,b) ln n / n)^{1/d}; requires n >= 2.
double radius_of(const ModelSpec& spec, std::size_t n, Color a, Color b);

/// p_n(a,b) = ball_volume(d) lambda(a,b) ln n / n.
///
/// Throws RegimeError if some radius exceeds 1/2 in Torus mode or some
/// probability exceeds one.
SquareMatrix connection_prob(const ModelSpec& spec, std::size_t n);

/// Deterministic in (spec, n, seed). Positions draw from one sub-stream and
/// colors from another, so changing lambda leaves both untouched.
Instance generate(const ModelSpec& spec, std::size_t n, std::uint64_t seed);

/// O(n^2) scan of all pairs under the connection rule.
std::vector<Edge> brute_force_edges(const ModelSpec& spec, const PointSet& positions,
                                    const std::vector<Color>& colors);

struct Violation {
  enum class Kind {
    SizeMismatch,
    PositionOutOfRange,
    ColorOutOfRange,
    SelfLoop,
    NonCanonicalEdge,
    UnsortedEdges,
    DuplicateEdge,
    MissingEdge,
    SpuriousEdge,
  };
  Kind kind;
  std::string message;
};

std::string_view to_string(Violation::Kind kind);

/// Re-checks every Instance invariant by brute force. Empty iff valid.
std::vector<Violation> validate(const Instance& instance);

}  // namespace cgrg
