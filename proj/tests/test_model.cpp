#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cgrg/model.hpp"
#include "fixtures.hpp"

namespace cgrg {
namespace {

using testing::spec_k;

bool has_kind(const std::vector<Violation>& vs, Violation::Kind kind) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == kind; });
}

TEST(Spec, ValidationRejectsBadInput) {
  EXPECT_THROW(make_spec(1, {1.0}, {{1.0}}), InvalidArgument);
  EXPECT_THROW(make_spec(2, {0.5, 0.6}, {{1, 1}, {1, 1}}), InvalidArgument);
  EXPECT_THROW(make_spec(2, {1.0, 0.0}, {{1, 1}, {1, 1}}), InvalidArgument);
  EXPECT_THROW(make_spec(2, {0.5, 0.5}, {{1, 2}, {1, 1}}), InvalidArgument);
  EXPECT_THROW(make_spec(2, {0.5, 0.5}, {{0, 0}, {0, 0}}), InvalidArgument);
  EXPECT_THROW(make_spec(2, {0.5, 0.5}, {{1, -1}, {-1, 1}}), InvalidArgument);
  EXPECT_THROW(make_spec(2, {0.5, 0.5}, {{1.0}}), InvalidArgument);
  EXPECT_THROW(make_spec(2, {0.5, 0.5}, {{1, 1}, {1, 1}}, MetricMode::Torus, {"a", "a"}), InvalidArgument);
}

TEST(Spec, DefaultSymbolsAndLookup) {
  const ModelSpec s = spec_k(3, 2);
  EXPECT_EQ(s.colors(), 3u);
  EXPECT_EQ(s.alphabet.symbol(2), "c2");
  EXPECT_EQ(s.alphabet.index_of("c1"), 1u);
  EXPECT_THROW(s.alphabet.index_of("zz"), InvalidArgument);
}

TEST(Radius, MatchesReferenceValue) {
  const ModelSpec s = spec_k(1, 2);
  // mpmath: sqrt(ln(1e4)/1e4), pi ln(1e4)/1e4
  EXPECT_NEAR(radius_of(s, 10000, 0, 0), 0.030348542587702927017259447871, 1e-16);
  EXPECT_NEAR(connection_prob(s, 10000)(0, 0), 0.0028935137649661859249960186201, 1e-17);
  EXPECT_THROW(radius_of(s, 1, 0, 0), InvalidArgument);
}

TEST(Radius, SymmetricInColors) {
  const ModelSpec s = spec_k(3, 3);
  for (Color a = 0; a < 3; ++a)
    for (Color b = 0; b < 3; ++b) EXPECT_EQ(radius_of(s, 777, a, b), radius_of(s, 777, b, a));
  const SquareMatrix p = connection_prob(s, 777);
  EXPECT_TRUE(p.is_symmetric());
}

TEST(Radius, OnlyOneNonzeroPair) {
  const ModelSpec s = make_spec(2, {0.2, 0.3, 0.5}, {{0, 0, 0}, {0, 0, 1.5}, {0, 1.5, 0}});
  const SquareMatrix p = connection_prob(s, 1000);
  for (Color a = 0; a < 3; ++a)
    for (Color b = 0; b < 3; ++b) {
      if ((a == 1 && b == 2) || (a == 2 && b == 1))
        EXPECT_GT(p(a, b), 0.0);
      else
        EXPECT_EQ(p(a, b), 0.0);
    }
}

TEST(Radius, ZeroKernelEntryGivesZeroRadius) {
  const ModelSpec s = make_spec(2, {0.5, 0.5}, {{1, 0}, {0, 1}});
  EXPECT_EQ(radius_of(s, 1000, 0, 1), 0.0);
  EXPECT_EQ(connection_prob(s, 1000)(0, 1), 0.0);
}

TEST(Radius, ProbabilityIsBallVolumeTimesRadiusPower) {
  for (int d = 2; d <= 4; ++d) {
    const ModelSpec s = make_spec(d, {0.5, 0.5}, {{1.0, 0.3}, {0.3, 2.0}});
    const SquareMatrix p = connection_prob(s, 5000);
    for (Color a = 0; a < 2; ++a)
      for (Color b = 0; b < 2; ++b)
        EXPECT_NEAR(p(a, b), ball_volume(d) * std::pow(radius_of(s, 5000, a, b), d), 1e-15);
  }
}

TEST(Regime, SmallNOnTorusIsRejected) {
  const ModelSpec s = spec_k(1, 2);
  EXPECT_THROW(connection_prob(s, 3), RegimeError);
  EXPECT_THROW(generate(s, 3, 1), RegimeError);
  EXPECT_NO_THROW(connection_prob(s, 64));
}

TEST(Regime, CubeRejectsProbabilityAboveOne) {
  const ModelSpec big = make_spec(2, {1.0}, {{30.0}}, MetricMode::Cube);
  EXPECT_THROW(connection_prob(big, 50), RegimeError);
}

TEST(Generate, SmallNHasNoEdges) {
  const ModelSpec s = spec_k(2, 2);
  const Instance zero = generate(s, 0, 1);
  EXPECT_EQ(zero.n, 0u);
  EXPECT_TRUE(zero.edges.empty());
  const Instance one = generate(s, 1, 1);
  EXPECT_EQ(one.colors.size(), 1u);
  EXPECT_EQ(one.positions.size(), 1u);
  EXPECT_TRUE(validate(one).empty());
}

TEST(Generate, IsDeterministicInSeed) {
  const ModelSpec s = spec_k(2, 2);
  const Instance a = generate(s, 800, 42);
  const Instance b = generate(s, 800, 42);
  const Instance c = generate(s, 800, 43);
  EXPECT_EQ(a.positions, b.positions);
  EXPECT_EQ(a.colors, b.colors);
  EXPECT_EQ(a.edges, b.edges);
  EXPECT_NE(a.colors, c.colors);
}

TEST(Generate, ColorsAndPositionsDoNotDependOnKernel) {
  const ModelSpec s = spec_k(2, 2);
  ModelSpec t = s;
  t.lambda = s.lambda.scaled(0.5);
  const Instance a = generate(s, 500, 9);
  const Instance b = generate(t, 500, 9);
  EXPECT_EQ(a.positions, b.positions);
  EXPECT_EQ(a.colors, b.colors);
  EXPECT_LT(b.edges.size(), a.edges.size());
}

// The grid-accelerated edge set must equal the O(n^2) scan everywhere.
TEST(Generate, MatchesBruteForce) {
  for (MetricMode mode : {MetricMode::Torus, MetricMode::Cube})
    for (int d = 2; d <= 3; ++d)
      for (int k = 1; k <= 3; ++k)
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
          const ModelSpec s = spec_k(k, d, mode);
          const Instance inst = generate(s, 600, seed);
          EXPECT_EQ(inst.edges, brute_force_edges(s, inst.positions, inst.colors))
              << "d=" << d << " k=" << k << " seed=" << seed;
          EXPECT_TRUE(validate(inst).empty());
        }
}

TEST(Generate, ColorFrequenciesFollowLaw) {
  const ModelSpec s = spec_k(3, 2);
  const double n = 100000;
  const Instance inst = generate(s, 100000, 17);
  std::vector<double> count(3, 0.0);
  for (Color c : inst.colors) count[c] += 1.0;
  for (Color a = 0; a < 3; ++a) {
    const double p = s.nu[a];
    EXPECT_NEAR(count[a] / n, p, 4 * std::sqrt(p * (1 - p) / n));
  }
}

TEST(Generate, LargerKernelGivesSupersetOfEdges) {
  for (MetricMode mode : {MetricMode::Torus, MetricMode::Cube})
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const ModelSpec s = spec_k(3, 2, mode);
      ModelSpec big = s;
      big.lambda = s.lambda.scaled(1.7);
      const Instance a = generate(s, 1000, seed);
      const Instance b = generate(big, 1000, seed);
      EXPECT_TRUE(std::includes(b.edges.begin(), b.edges.end(), a.edges.begin(), a.edges.end()));
    }
}

TEST(Generate, GridMatchesBruteForceOverManySeeds) {
  for (MetricMode mode : {MetricMode::Torus, MetricMode::Cube})
    for (std::uint64_t seed = 100; seed < 150; ++seed) {
      const ModelSpec s = spec_k(2, 2, mode);
      const Instance inst = generate(s, 512, seed);
      ASSERT_EQ(inst.edges, brute_force_edges(s, inst.positions, inst.colors)) << "seed " << seed;
    }
}

// Torus edges are exactly Bernoulli(p_n) marginally.
TEST(Generate, MeanEdgeCountOverReplicates) {
  const ModelSpec s = spec_k(1, 2);
  const std::size_t n = 4096, reps = 1000;
  const double expected = 0.5 * n * (n - 1.0) * connection_prob(s, n)(0, 0);
  double sum = 0.0, sum2 = 0.0;
  for (std::uint64_t seed = 0; seed < reps; ++seed) {
    const double e = static_cast<double>(generate(s, n, 5000 + seed).edges.size());
    sum += e, sum2 += e * e;
  }
  const double mean = sum / reps;
  const double sd = std::sqrt((sum2 - reps * mean * mean) / (reps - 1.0));
  EXPECT_NEAR(mean, expected, 3.0 * sd);
  EXPECT_NEAR(mean, expected, 4.0 * sd / std::sqrt(static_cast<double>(reps)));
}

TEST(Generate, EdgeCountMatchesConnectionProbability) {
  // Torus edges are pairwise Bernoulli(p), so |E| has mean C(n,2) p.
  const ModelSpec s = spec_k(1, 2);
  const std::size_t n = 20000;
  const double p = connection_prob(s, n)(0, 0);
  const double mean = 0.5 * n * (n - 1.0) * p;
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) total += static_cast<double>(generate(s, n, seed).edges.size());
  EXPECT_NEAR(total / 10.0, mean, 5.0 * std::sqrt(mean / 10.0));
}

TEST(Validate, DetectsEveryViolationKind) {
  const ModelSpec s = spec_k(2, 2);
  const Instance good = generate(s, 300, 3);
  ASSERT_TRUE(validate(good).empty());
  ASSERT_GE(good.edges.size(), 3u);

  Instance bad = good;
  bad.colors.pop_back();
  EXPECT_TRUE(has_kind(validate(bad), Violation::Kind::SizeMismatch));

  bad = good;
  bad.colors[0] = 7;
  EXPECT_TRUE(has_kind(validate(bad), Violation::Kind::ColorOutOfRange));

  bad = good;
  {
    std::vector<double> c(bad.positions.coords().begin(), bad.positions.coords().end());
    c[0] = 1.5;
    bad.positions = PointSet(2, c);
  }
  EXPECT_TRUE(has_kind(validate(bad), Violation::Kind::PositionOutOfRange));

  bad = good;
  bad.edges.insert(bad.edges.begin(), Edge{4, 4});
  EXPECT_TRUE(has_kind(validate(bad), Violation::Kind::SelfLoop));

  bad = good;
  std::swap(bad.edges[0].u, bad.edges[0].v);
  EXPECT_TRUE(has_kind(validate(bad), Violation::Kind::NonCanonicalEdge));

  bad = good;
  std::swap(bad.edges[0], bad.edges[1]);
  EXPECT_TRUE(has_kind(validate(bad), Violation::Kind::UnsortedEdges));

  bad = good;
  bad.edges.push_back(bad.edges.back());
  EXPECT_TRUE(has_kind(validate(bad), Violation::Kind::DuplicateEdge));

  bad = good;
  bad.edges.erase(bad.edges.begin() + 1);
  EXPECT_TRUE(has_kind(validate(bad), Violation::Kind::MissingEdge));

  bad = good;
  std::uint32_t far = 1;
  while (std::binary_search(good.edges.begin(), good.edges.end(), Edge{0, far})) ++far;
  bad.edges.push_back(Edge{0, far});
  std::sort(bad.edges.begin(), bad.edges.end());
  EXPECT_TRUE(has_kind(validate(bad), Violation::Kind::SpuriousEdge));
}

TEST(Validate, KindNamesAreReadable) {
  EXPECT_EQ(to_string(Violation::Kind::MissingEdge), "missing edge");
  EXPECT_EQ(to_string(Violation::Kind::SelfLoop), "self-loop");
}

}  // namespace
}  // namespace cgrg
