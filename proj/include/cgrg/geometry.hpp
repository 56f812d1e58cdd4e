#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "cgrg/types.hpp"

namespace cgrg {

/// Boundary convention for distances in the unit cube.
///
/// Torus wraps every axis, so the two-point distance law satisfies
/// P(|U1 - U2| <= r) = ball_volume(d) r^d exactly for r <= 1/2. Cube is the
/// plain Euclidean metric on [0,1]^d, where boundary effects make the same
/// probability strictly smaller.
enum class MetricMode { Torus, Cube };

std::string_view to_string(MetricMode mode);
/// Accepts "torus" or "cube"; throws InvalidArgument otherwise.
MetricMode parse_metric(std::string_view name);

/// A view of one point's coordinates.
using Point = std::span<const double>;

/// Volume of the unit ball in R^d, pi^{d/2} / Gamma(d/2 + 1). Requires d >= 2.
double ball_volume(int d);

double distance(Point p, Point q, MetricMode mode);

/// Flat storage for n points in [0,1)^d.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(int dim) : dim_(dim) {}
  PointSet(int dim, std::vector<double> coords);

  int dimension() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / static_cast<std::size_t>(dim_); }
  bool empty() const { return coords_.empty(); }
  Point operator[](std::size_t i) const {
    return Point(coords_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_));
  }
  void push_back(Point p);
  std::span<const double> coords() const { return coords_; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  int dim_ = 0;
  std::vector<double> coords_;
};

/// Uniform cell grid over the unit cube for fixed-radius neighbor queries.
///
/// The grid has m = floor(1 / cell_side) cells per axis (capped so that the
/// total cell count stays proportional to the number of points), giving an
/// effective side 1/m >= cell_side. A vertex's candidate set is every vertex
/// in the 3^d block of cells around its own, wrapped in Torus mode, which is
/// a superset of all vertices within distance cell_side.
class CellGrid {
 public:
  CellGrid(const PointSet& points, double cell_side, MetricMode mode);

  int dimension() const { return dim_; }
  MetricMode metric() const { return mode_; }
  std::size_t cells_per_axis() const { return m_; }
  double cell_side() const { return 1.0 / static_cast<double>(m_); }
  std::size_t vertex_count() const { return cell_of_vertex_.size(); }

  /// Number of nonempty buckets.
  std::size_t bucket_count() const { return nonempty_; }
  /// Integer cell coordinates of vertex v.
  std::vector<int> cell_of(std::size_t v) const;
  /// Vertices stored under the given cell coordinates, ascending.
  std::span<const std::uint32_t> bucket(std::span<const int> cell) const;

  /// All vertices in the cell neighborhood of v, excluding v, ascending.
  std::vector<std::size_t> neighbors(std::size_t v) const;

  /// Calls visit(u) for every vertex u in the cell neighborhood of v (v included).
  /// Each u is visited once.
  template <class Visit>
  void for_each_candidate(std::size_t v, std::vector<std::size_t>& scratch, Visit&& visit) const {
    neighbor_cells(cell_of_vertex_[v], scratch);
    for (std::size_t c : scratch)
      for (std::uint32_t u : bucket_at(c)) visit(static_cast<std::size_t>(u));
  }

 private:
  std::span<const std::uint32_t> bucket_at(std::size_t cell) const {
    return std::span<const std::uint32_t>(items_.data() + start_[cell], start_[cell + 1] - start_[cell]);
  }
  void neighbor_cells(std::size_t cell, std::vector<std::size_t>& out) const;
  std::size_t linear_index(std::span<const int> cell) const;

  int dim_ = 0;
  MetricMode mode_ = MetricMode::Torus;
  std::size_t m_ = 1;
  std::size_t cell_count_ = 1;
  std::size_t nonempty_ = 0;
  std::vector<std::size_t> start_;
  std::vector<std::uint32_t> items_;
  std::vector<std::size_t> cell_of_vertex_;
};

}  // namespace cgrg
