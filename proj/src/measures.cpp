#include "cgrg/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cgrg {

ProbMeasure sensor_measure(const Instance& instance) {
  if (instance.n == 0) throw InvalidArgument("empty graph has no empirical sensor measure");
  std::vector<double> counts(instance.spec.colors(), 0.0);
  for (Color c : instance.colors) counts.at(c) += 1.0;
  const double n = static_cast<double>(instance.n);
  for (double& x : counts) x /= n;
  return ProbMeasure(std::move(counts));
}

SquareMatrix edge_counts_by_color(const Instance& instance) {
  SquareMatrix counts(instance.spec.colors());
  for (const Edge& e : instance.edges) {
    const Color a = instance.colors.at(e.u);
    const Color b = instance.colors.at(e.v);
    counts(a, b) += 1.0;
    if (a != b) counts(b, a) += 1.0;
  }
  return counts;
}

FiniteMeasure2 link_measure(const Instance& instance) {
  if (instance.n < 2)
    throw InvalidArgument("link measure requires n >= 2, got n = " + std::to_string(instance.n));
  const double n = static_cast<double>(instance.n);
  const double unit = 1.0 / (n * std::log(n));
  SquareMatrix l2 = edge_counts_by_color(instance);
  for (std::size_t a = 0; a < l2.size(); ++a)
    for (std::size_t b = 0; b < l2.size(); ++b) l2(a, b) *= (a == b ? 2.0 : 1.0) * unit;
  return FiniteMeasure2(std::move(l2));
}

EmpiricalPair empirical_pair(const Instance& instance) {
  return {sensor_measure(instance), link_measure(instance), instance.n, instance.edges.size()};
}

FiniteMeasure2 product_measure(const ProbMeasure& omega, const RadiusKernel& kernel, double scale) {
  if (omega.size() != kernel.size())
    throw InvalidArgument("product measure: omega has " + std::to_string(omega.size()) + " entries, kernel is " +
                          std::to_string(kernel.size()) + "x" + std::to_string(kernel.size()));
  if (!(scale >= 0.0)) throw InvalidArgument("product measure scale must be nonnegative");
  SquareMatrix m(omega.size());
  for (Color a = 0; a < omega.size(); ++a)
    for (Color b = 0; b < omega.size(); ++b)
      m(a, b) = scale * kernel(a, b) * omega[std::min(a, b)] * omega[std::max(a, b)];
  return FiniteMeasure2(std::move(m));
}

}  // namespace cgrg
