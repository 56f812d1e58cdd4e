#pragma once

#include <cstddef>

#include "cgrg/model.hpp"
#include "cgrg/types.hpp"

namespace cgrg {

/// Empirical sensor measure L1 and empirical link measure L2 of one graph.
struct EmpiricalPair {
  ProbMeasure l1;
  FiniteMeasure2 l2;
  std::size_t n = 0;
  std::size_t edge_count = 0;
};

/// Color histogram divided by n. Requires n >= 1.
ProbMeasure sensor_measure(const Instance& instance);

/// L2(a,b) = (number of edges with endpoint colors {a,b}, counted in both
/// orientations) / (n ln n). A monochromatic edge adds 2/(n ln n) to (a,a),
/// so the total mass is 2|E| / (n ln n). Requires n >= 2.
FiniteMeasure2 link_measure(const Instance& instance);

EmpiricalPair empirical_pair(const Instance& instance);

/// (a,b) -> scale * lambda(a,b) * omega(a) * omega(b).
FiniteMeasure2 product_measure(const ProbMeasure& omega, const RadiusKernel& kernel, double scale);

/// Per-unordered-color-pair edge counts, stored symmetrically.
SquareMatrix edge_counts_by_color(const Instance& instance);

}  // namespace cgrg
