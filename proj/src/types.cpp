#include "cgrg/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cgrg {

namespace {
constexpr double kMassTolerance = 1e-12;
}

SquareMatrix SquareMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  SquareMatrix m(rows.size());
  for (std::size_t a = 0; a < rows.size(); ++a) {
    if (rows[a].size() != rows.size()) {
      throw InvalidArgument("matrix must be square: row " + std::to_string(a) + " has " +
                            std::to_string(rows[a].size()) + " entries, expected " +
                            std::to_string(rows.size()));
    }
    std::copy(rows[a].begin(), rows[a].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(a * m.k_));
  }
  return m;
}

double SquareMatrix::total() const { return std::accumulate(data_.begin(), data_.end(), 0.0); }

bool SquareMatrix::is_symmetric() const {
  for (std::size_t a = 0; a < k_; ++a)
    for (std::size_t b = a + 1; b < k_; ++b)
      if ((*this)(a, b) != (*this)(b, a)) return false;
  return true;
}

std::vector<std::vector<double>> SquareMatrix::rows() const {
  std::vector<std::vector<double>> out(k_);
  for (std::size_t a = 0; a < k_; ++a)
    out[a].assign(data_.begin() + static_cast<std::ptrdiff_t>(a * k_),
                  data_.begin() + static_cast<std::ptrdiff_t>((a + 1) * k_));
  return out;
}

double max_abs_diff(const SquareMatrix& x, const SquareMatrix& y) {
  if (x.size() != y.size()) throw InvalidArgument("matrix size mismatch");
  double best = 0.0;
  for (std::size_t i = 0; i < x.data().size(); ++i)
    best = std::max(best, std::abs(x.data()[i] - y.data()[i]));
  return best;
}

ProbMeasure::ProbMeasure(std::vector<double> weights) : w_(std::move(weights)) {
  if (w_.empty()) throw InvalidArgument("probability measure must be nonempty");
  double sum = 0.0;
  for (double x : w_) {
    if (!(x >= 0.0) || !std::isfinite(x))
      throw InvalidArgument("probability measure has a negative or non-finite weight");
    sum += x;
  }
  if (std::abs(sum - 1.0) > kMassTolerance)
    throw InvalidArgument("probability measure does not sum to one (sum = " + std::to_string(sum) + ")");
}

FiniteMeasure2::FiniteMeasure2(SquareMatrix weights) : w_(std::move(weights)) {
  for (double x : w_.data())
    if (!(x >= 0.0) || !std::isfinite(x))
      throw InvalidArgument("finite measure has a negative or non-finite weight");
  for (std::size_t a = 0; a < w_.size(); ++a)
    for (std::size_t b = a + 1; b < w_.size(); ++b) {
      const double scale = std::max({1.0, w_(a, b), w_(b, a)});
      if (std::abs(w_(a, b) - w_(b, a)) > kMassTolerance * scale)
        throw InvalidArgument("finite measure on pairs is not symmetric");
    }
}

}  // namespace cgrg
