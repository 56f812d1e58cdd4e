#include "cgrg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cgrg/types.hpp"

namespace cgrg {

std::string_view to_string(MetricMode mode) { return mode == MetricMode::Torus ? "torus" : "cube"; }

MetricMode parse_metric(std::string_view name) {
  if (name == "torus") return MetricMode::Torus;
  if (name == "cube") return MetricMode::Cube;
  throw InvalidArgument("unknown metric '" + std::string(name) + "' (expected torus or cube)");
}

double ball_volume(int d) {
  if (d < 2) throw InvalidArgument("dimension must be at least 2, got " + std::to_string(d));
  const double half = 0.5 * d;
  return std::exp(half * std::log(std::numbers::pi) - std::lgamma(half + 1.0));
}

double distance(Point p, Point q, MetricMode mode) {
  if (p.size() != q.size())
    throw InvalidArgument("distance: dimension mismatch (" + std::to_string(p.size()) + " vs " +
                          std::to_string(q.size()) + ")");
  double sum = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    double delta = std::abs(p[k] - q[k]);
    if (mode == MetricMode::Torus) delta = std::min(delta, 1.0 - delta);
    sum += delta * delta;
  }
  return std::sqrt(sum);
}

PointSet::PointSet(int dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
  if (dim_ <= 0) throw InvalidArgument("point dimension must be positive");
  if (coords_.size() % static_cast<std::size_t>(dim_) != 0)
    throw InvalidArgument("coordinate count is not a multiple of the dimension");
}

void PointSet::push_back(Point p) {
  if (static_cast<int>(p.size()) != dim_) throw InvalidArgument("point has wrong dimension");
  coords_.insert(coords_.end(), p.begin(), p.end());
}

namespace {

// Largest m with m^d <= limit.
std::size_t max_cells_per_axis(std::size_t limit, int d) {
  auto m = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(limit), 1.0 / d)));
  auto pow_le = [&](std::size_t base) {
    std::size_t acc = 1;
    for (int k = 0; k < d; ++k) {
      if (acc > limit / std::max<std::size_t>(base, 1)) return false;
      acc *= base;
    }
    return acc <= limit;
  };
  while (m > 1 && !pow_le(m)) --m;
  while (pow_le(m + 1)) ++m;
  return std::max<std::size_t>(m, 1);
}

}  // namespace

CellGrid::CellGrid(const PointSet& points, double cell_side, MetricMode mode)
    : dim_(points.dimension()), mode_(mode) {
  if (!(cell_side > 0.0)) throw InvalidArgument("cell side must be positive");
  if (cell_side > 1.0) throw InvalidArgument("cell side must not exceed 1");
  if (dim_ < 1) dim_ = 1;

  const std::size_t n = points.size();
  const std::size_t cap = std::max<std::size_t>(64, 4 * n);
  m_ = std::min(static_cast<std::size_t>(std::floor(1.0 / cell_side)), max_cells_per_axis(cap, dim_));
  m_ = std::max<std::size_t>(m_, 1);
  cell_count_ = 1;
  for (int k = 0; k < dim_; ++k) cell_count_ *= m_;

  cell_of_vertex_.resize(n);
  std::vector<int> cell(static_cast<std::size_t>(dim_));
  std::vector<std::size_t> counts(cell_count_, 0);
  const double scale = static_cast<double>(m_);
  for (std::size_t v = 0; v < n; ++v) {
    const Point p = points[v];
    for (int k = 0; k < dim_; ++k) {
      auto c = static_cast<long long>(std::floor(p[static_cast<std::size_t>(k)] * scale));
      c = std::clamp<long long>(c, 0, static_cast<long long>(m_) - 1);
      cell[static_cast<std::size_t>(k)] = static_cast<int>(c);
    }
    cell_of_vertex_[v] = linear_index(cell);
    ++counts[cell_of_vertex_[v]];
  }

  start_.assign(cell_count_ + 1, 0);
  for (std::size_t c = 0; c < cell_count_; ++c) {
    start_[c + 1] = start_[c] + counts[c];
    if (counts[c] > 0) ++nonempty_;
  }
  items_.resize(n);
  std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
  for (std::size_t v = 0; v < n; ++v) items_[fill[cell_of_vertex_[v]]++] = static_cast<std::uint32_t>(v);
}

std::size_t CellGrid::linear_index(std::span<const int> cell) const {
  std::size_t idx = 0;
  for (int k = dim_ - 1; k >= 0; --k) idx = idx * m_ + static_cast<std::size_t>(cell[static_cast<std::size_t>(k)]);
  return idx;
}

std::vector<int> CellGrid::cell_of(std::size_t v) const {
  if (v >= cell_of_vertex_.size()) throw InvalidArgument("vertex " + std::to_string(v) + " is not in the grid");
  std::vector<int> cell(static_cast<std::size_t>(dim_));
  std::size_t idx = cell_of_vertex_[v];
  for (int k = 0; k < dim_; ++k) {
    cell[static_cast<std::size_t>(k)] = static_cast<int>(idx % m_);
    idx /= m_;
  }
  return cell;
}

std::span<const std::uint32_t> CellGrid::bucket(std::span<const int> cell) const {
  if (static_cast<int>(cell.size()) != dim_) throw InvalidArgument("cell coordinates have wrong dimension");
  for (int c : cell)
    if (c < 0 || static_cast<std::size_t>(c) >= m_) return {};
  return bucket_at(linear_index(cell));
}

void CellGrid::neighbor_cells(std::size_t cell, std::vector<std::size_t>& out) const {
  out.clear();
  std::vector<int> base(static_cast<std::size_t>(dim_));
  for (int k = 0; k < dim_; ++k) {
    base[static_cast<std::size_t>(k)] = static_cast<int>(cell % m_);
    cell /= m_;
  }
  const auto m = static_cast<int>(m_);
  std::vector<int> offset(static_cast<std::size_t>(dim_), -1);
  std::vector<int> target(static_cast<std::size_t>(dim_));
  while (true) {
    bool inside = true;
    for (std::size_t k = 0; k < offset.size(); ++k) {
      int c = base[k] + offset[k];
      if (mode_ == MetricMode::Torus) {
        c = (c % m + m) % m;
      } else if (c < 0 || c >= m) {
        inside = false;
        break;
      }
      target[k] = c;
    }
    if (inside) out.push_back(linear_index(target));

    std::size_t k = 0;
    while (k < offset.size() && offset[k] == 1) offset[k++] = -1;
    if (k == offset.size()) break;
    ++offset[k];
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

std::vector<std::size_t> CellGrid::neighbors(std::size_t v) const {
  if (v >= cell_of_vertex_.size()) throw InvalidArgument("vertex " + std::to_string(v) + " is not in the grid");
  std::vector<std::size_t> scratch;
  std::vector<std::size_t> out;
  for_each_candidate(v, scratch, [&](std::size_t u) {
    if (u != v) out.push_back(u);
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cgrg
