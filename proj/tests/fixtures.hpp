#pragma once

#include <cstdint>
#include <vector>

#include "cgrg/model.hpp"

namespace cgrg::testing {

/// Instance built by hand; positions are irrelevant to the likelihood and coder.
inline Instance manual_instance(const ModelSpec& spec, std::vector<Color> colors, std::vector<Edge> edges) {
  Instance inst;
  inst.spec = spec;
  inst.n = colors.size();
  inst.positions = PointSet(spec.d, std::vector<double>(colors.size() * static_cast<std::size_t>(spec.d), 0.5));
  inst.colors = std::move(colors);
  inst.edges = std::move(edges);
  return inst;
}

inline ModelSpec spec_k(int k, int d, MetricMode metric = MetricMode::Torus) {
  switch (k) {
    case 1:
      return make_spec(d, {1.0}, {{1.0}}, metric);
    case 2:
      return make_spec(d, {0.4, 0.6}, {{1.0, 0.5}, {0.5, 2.0}}, metric);
    default:
      return make_spec(d, {0.2, 0.3, 0.5}, {{1.0, 0.5, 0.25}, {0.5, 2.0, 1.0}, {0.25, 1.0, 1.5}}, metric);
  }
}

}  // namespace cgrg::testing
