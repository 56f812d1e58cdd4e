#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cgrg {

/// Index of a color (sensor type) in the model alphabet.
using Color = std::uint32_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed parameters, dimension mismatches, bad configuration.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The requested n lies outside the regime where F(r) = rho(d) r^d holds
/// or where connection probabilities stay below one.
class RegimeError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// An instance has zero probability under the model and cannot be coded.
class UncodableError : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

/// Dense K x K matrix of doubles, row-major.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t k, double fill = 0.0) : k_(k), data_(k * k, fill) {}
  /// Builds from nested rows; throws InvalidArgument if the rows are ragged.
  static SquareMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const { return k_; }
  double& operator()(std::size_t a, std::size_t b) { return data_[a * k_ + b]; }
  double operator()(std::size_t a, std::size_t b) const { return data_[a * k_ + b]; }
  std::span<const double> data() const { return data_; }

  double total() const;
  bool is_symmetric() const;
  std::vector<std::vector<double>> rows() const;

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t k_ = 0;
  std::vector<double> data_;
};

/// Largest entrywise absolute difference; sizes must agree.
double max_abs_diff(const SquareMatrix& x, const SquareMatrix& y);

/// Probability vector over the alphabet: nonnegative, sums to one within 1e-12.
class ProbMeasure {
 public:
  ProbMeasure() = default;
  explicit ProbMeasure(std::vector<double> weights);

  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t a) const { return w_[a]; }
  std::span<const double> weights() const { return w_; }

  friend bool operator==(const ProbMeasure&, const ProbMeasure&) = default;

 private:
  std::vector<double> w_;
};

/// Symmetric finite measure on color pairs: nonnegative, symmetric within 1e-12.
class FiniteMeasure2 {
 public:
  FiniteMeasure2() = default;
  explicit FiniteMeasure2(SquareMatrix weights);

  std::size_t size() const { return w_.size(); }
  double operator()(std::size_t a, std::size_t b) const { return w_(a, b); }
  const SquareMatrix& weights() const { return w_; }
  double mass() const { return w_.total(); }

  friend bool operator==(const FiniteMeasure2&, const FiniteMeasure2&) = default;

 private:
  SquareMatrix w_;
};

}  // namespace cgrg
