#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "cgrg/measures.hpp"
#include "fixtures.hpp"

namespace cgrg {
namespace {

using testing::manual_instance;
using testing::spec_k;

TEST(Measures, TriangleLinkMeasure) {
  const Instance tri = manual_instance(spec_k(1, 2), {0, 0, 0}, {{0, 1}, {0, 2}, {1, 2}});
  const FiniteMeasure2 l2 = link_measure(tri);
  // mpmath: 6 / (3 ln 3)
  EXPECT_NEAR(l2(0, 0), 1.82047845325367478722848033147, 1e-15);
  EXPECT_NEAR(l2.mass(), 1.82047845325367478722848033147, 1e-15);
  EXPECT_DOUBLE_EQ(sensor_measure(tri)[0], 1.0);
}

TEST(Measures, OffDiagonalCountsBothOrientations) {
  const ModelSpec s = spec_k(2, 2);
  const Instance inst = manual_instance(s, {0, 1, 1}, {{0, 1}, {1, 2}});
  const double unit = 1.0 / (3.0 * std::log(3.0));
  const FiniteMeasure2 l2 = link_measure(inst);
  EXPECT_DOUBLE_EQ(l2(0, 1), unit);
  EXPECT_DOUBLE_EQ(l2(1, 0), unit);
  EXPECT_DOUBLE_EQ(l2(1, 1), 2.0 * unit);
  EXPECT_DOUBLE_EQ(l2(0, 0), 0.0);
  EXPECT_NEAR(l2.mass(), 2.0 * 2.0 * unit, 1e-15);

  const SquareMatrix counts = edge_counts_by_color(inst);
  EXPECT_EQ(counts(0, 1), 1.0);
  EXPECT_EQ(counts(1, 1), 1.0);
}

TEST(Measures, HandCountedExamples) {
  const ModelSpec s = spec_k(2, 2);
  const ProbMeasure l1 = sensor_measure(manual_instance(s, {0, 0, 1, 1}, {}));
  EXPECT_EQ(l1[0], 0.5);
  EXPECT_EQ(l1[1], 0.5);
  EXPECT_EQ(sensor_measure(manual_instance(s, {1, 1, 1}, {}))[1], 1.0);
  EXPECT_EQ(link_measure(manual_instance(s, {0, 1, 1}, {})).mass(), 0.0);
}

TEST(Measures, SensorMeasureConcentrates) {
  const ModelSpec s = make_spec(2, {0.3, 0.7}, {{1, 1}, {1, 1}});
  const ProbMeasure l1 = sensor_measure(generate(s, 100000, 3));
  EXPECT_LT(std::abs(l1[0] - 0.3), 0.01);
  EXPECT_LT(std::abs(l1[1] - 0.7), 0.01);
}

TEST(Measures, ProductMeasureExamples) {
  const RadiusKernel ones(SquareMatrix(2, 1.0));
  const FiniteMeasure2 pm = product_measure(ProbMeasure({0.5, 0.5}), ones, std::numbers::pi);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) EXPECT_DOUBLE_EQ(pm(a, b), std::numbers::pi / 4);
  EXPECT_EQ(product_measure(ProbMeasure({0.5, 0.5}), ones, 0.0).mass(), 0.0);
  const RadiusKernel c(SquareMatrix(1, 2.5));
  EXPECT_DOUBLE_EQ(product_measure(ProbMeasure({1.0}), c, 3.0)(0, 0), 7.5);
}

// Corrected weak law: sup |L2 - rho lambda nu nu| shrinks along n.
TEST(Measures, LinkMeasureDeviationDecreases) {
  const ModelSpec s = make_spec(2, {0.4, 0.6}, {{1, 1}, {1, 1}});
  const FiniteMeasure2 target = product_measure(s.nu.measure(), s.lambda, ball_volume(2));
  double previous = INFINITY;
  for (std::size_t n : {1u << 10, 1u << 12, 1u << 14, 1u << 16}) {
    double sum = 0.0;
    for (std::uint64_t rep = 0; rep < 200; ++rep)
      sum += max_abs_diff(link_measure(generate(s, n, 31 * n + rep)).weights(), target.weights());
    const double mean = sum / 200.0;
    EXPECT_LT(mean, previous) << "n = " << n;
    previous = mean;
  }
}

TEST(Measures, SmallNRejected) {
  const ModelSpec s = spec_k(1, 2);
  EXPECT_THROW(sensor_measure(manual_instance(s, {}, {})), InvalidArgument);
  EXPECT_THROW(link_measure(manual_instance(s, {0}, {})), InvalidArgument);
}

// L1 is a probability vector and ||L2|| = 2|E| / (n ln n) on every instance.
TEST(Measures, MassIdentitiesHoldOnGeneratedGraphs) {
  for (int k = 1; k <= 3; ++k)
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Instance inst = generate(spec_k(k, 2), 2000, seed);
      const EmpiricalPair ep = empirical_pair(inst);
      const auto w = ep.l1.weights();
      EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-12);
      const double n = static_cast<double>(inst.n);
      EXPECT_NEAR(ep.l2.mass(), 2.0 * inst.edges.size() / (n * std::log(n)), 1e-12);
      EXPECT_TRUE(ep.l2.weights().is_symmetric());
      EXPECT_EQ(ep.edge_count, inst.edges.size());
    }
}

TEST(Measures, ProductMeasureIsExactlySymmetric) {
  const ProbMeasure omega({0.1, 0.2, 0.7});
  const ModelSpec s = spec_k(3, 2);
  const FiniteMeasure2 pm = product_measure(omega, s.lambda, 3.7);
  EXPECT_TRUE(pm.weights().is_symmetric());
  EXPECT_DOUBLE_EQ(pm(0, 2), 3.7 * 0.25 * 0.1 * 0.7);
  EXPECT_THROW(product_measure(ProbMeasure({0.5, 0.5}), s.lambda, 1.0), InvalidArgument);
}

TEST(Measures, TypesRejectInvalidWeights) {
  EXPECT_THROW(ProbMeasure({0.5, 0.4}), InvalidArgument);
  EXPECT_THROW(ProbMeasure({1.5, -0.5}), InvalidArgument);
  EXPECT_THROW(ProbMeasure(std::vector<double>{}), InvalidArgument);
  EXPECT_THROW(FiniteMeasure2(SquareMatrix::from_rows({{1, 2}, {3, 4}})), InvalidArgument);
  EXPECT_THROW(FiniteMeasure2(SquareMatrix::from_rows({{-1, 0}, {0, 1}})), InvalidArgument);
  EXPECT_THROW(SquareMatrix::from_rows({{1, 2}, {3}}), InvalidArgument);
}

}  // namespace
}  // namespace cgrg
