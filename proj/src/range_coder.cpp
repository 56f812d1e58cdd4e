#include "cgrg/range_coder.hpp"

#include <cmath>

namespace cgrg {

namespace {

constexpr std::uint64_t kTop = std::uint64_t{1} << 56;
constexpr std::uint64_t kFlushMask = (std::uint64_t{1} << 48) - 1;

std::uint64_t split(std::uint64_t range, std::uint64_t p_one) {
  auto bound = static_cast<std::uint64_t>((static_cast<unsigned __int128>(range) * p_one) >> 64);
  if (bound == 0) bound = 1;
  if (bound >= range) bound = range - 1;
  return bound;
}

}  // namespace

std::uint64_t quantize_probability(double p) {
  if (!(p > 0.0)) return 1;
  if (!(p < 1.0)) return ~std::uint64_t{0};
  const double scaled = std::ldexp(p, 64);
  if (scaled < 1.0) return 1;
  const auto q = static_cast<std::uint64_t>(scaled);
  return q == 0 ? 1 : q;
}

void BinaryRangeEncoder::encode(bool bit, std::uint64_t p_one) {
  ++symbols_;
  const std::uint64_t bound = split(range_, p_one);
  if (bit) {
    range_ = bound;
  } else {
    low_ += bound;
    if (low_ < bound) carry_ = true;
    range_ -= bound;
  }
  while (range_ < kTop) {
    shift_low();
    range_ <<= 8;
  }
}

void BinaryRangeEncoder::shift_low() {
  const auto top = static_cast<std::uint8_t>(low_ >> 56);
  if (top != 0xFF || carry_) {
    const auto c = static_cast<std::uint8_t>(carry_ ? 1 : 0);
    if (have_cache_) out_.push_back(static_cast<std::uint8_t>(cache_ + c));
    for (; pending_ > 0; --pending_) out_.push_back(static_cast<std::uint8_t>(0xFF + c));
    cache_ = top;
    have_cache_ = true;
  } else {
    ++pending_;
  }
  low_ <<= 8;
  carry_ = false;
}

std::vector<std::uint8_t> BinaryRangeEncoder::finish() {
  if (symbols_ == 0) return {};
  // Smallest value >= low with 48 trailing zero bits; it lies inside the
  // interval because range >= 2^56.
  const std::uint64_t bump = (kFlushMask + 1 - (low_ & kFlushMask)) & kFlushMask;
  low_ += bump;
  if (low_ < bump) carry_ = true;
  shift_low();
  shift_low();
  if (have_cache_) out_.push_back(cache_);
  for (; pending_ > 0; --pending_) out_.push_back(0xFF);
  have_cache_ = false;
  return std::move(out_);
}

BinaryRangeDecoder::BinaryRangeDecoder(std::span<const std::uint8_t> payload) : in_(payload) {
  for (int k = 0; k < 8; ++k) code_ = (code_ << 8) | next_byte();
}

bool BinaryRangeDecoder::decode(std::uint64_t p_one) {
  const std::uint64_t bound = split(range_, p_one);
  bool bit;
  if (code_ < bound) {
    range_ = bound;
    bit = true;
  } else {
    code_ -= bound;
    range_ -= bound;
    bit = false;
  }
  while (range_ < kTop) {
    code_ = (code_ << 8) | next_byte();
    range_ <<= 8;
    ++shifts_;
  }
  return bit;
}

}  // namespace cgrg
