#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cgrg {

/// Probability of a one bit in units of 2^-64, clamped to [1, 2^64 - 1].
/// Only meaningful for 0 < p < 1.
std::uint64_t quantize_probability(double p);

/// Binary range encoder with a 64-bit range and byte-wise carry propagation.
///
/// The range is renormalized to stay >= 2^56, so each coded bit loses at most
/// about 2^-56 of relative width to integer truncation. finish() rounds the
/// final interval to a value with 48 trailing zero bits and writes two more
/// bytes, so the output length L (bits) satisfies
/// -log2 P + 8 <= L < -log2 P + 16 up to truncation effects.
class BinaryRangeEncoder {
 public:
  /// bit == true takes the lower sub-interval of width p_one * range.
  void encode(bool bit, std::uint64_t p_one);
  std::size_t symbols() const { return symbols_; }
  /// Flushes the coder state; empty output when nothing was encoded.
  std::vector<std::uint8_t> finish();

 private:
  void shift_low();

  std::uint64_t low_ = 0;
  std::uint64_t range_ = ~std::uint64_t{0};
  bool carry_ = false;
  bool have_cache_ = false;
  std::uint8_t cache_ = 0;
  std::uint64_t pending_ = 0;
  std::size_t symbols_ = 0;
  std::vector<std::uint8_t> out_;
};

class BinaryRangeDecoder {
 public:
  explicit BinaryRangeDecoder(std::span<const std::uint8_t> payload);

  bool decode(std::uint64_t p_one);
  /// Bytes of the stream the decoder has moved past, zero padding included.
  std::size_t position() const { return pos_; }
  /// Number of renormalization shifts; the encoder emits shifts() + 2 bytes.
  std::size_t shifts() const { return shifts_; }

 private:
  std::uint8_t next_byte() { return pos_ < in_.size() ? in_[pos_++] : (++pos_, std::uint8_t{0}); }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
  std::size_t shifts_ = 0;
  std::uint64_t code_ = 0;
  std::uint64_t range_ = ~std::uint64_t{0};
};

}  // namespace cgrg
