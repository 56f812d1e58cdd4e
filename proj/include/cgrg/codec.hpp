#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cgrg/model.hpp"

namespace cgrg {

/// Colors and edge set of an instance, range-coded against the product law.
/// Positions are not part of the code.
struct CodedGraph {
  ModelSpec spec;
  std::size_t n = 0;
  std::vector<std::uint8_t> payload;

  std::size_t payload_bits() const { return 8 * payload.size(); }
};

struct DecodedGraph {
  std::vector<Color> colors;
  std::vector<Edge> edges;

  friend bool operator==(const DecodedGraph&, const DecodedGraph&) = default;
};

/// Codes the n colors (law nu, as a chain of binary decisions) followed by
/// the indicator of every pair u < v in lexicographic order, each a
/// Bernoulli(p_n(color u, color v)) bit. Pairs with p_n in {0, 1} carry no
/// bits. Throws UncodableError if the instance has probability zero.
CodedGraph encode(const Instance& instance);

/// Inverse of encode. Throws DecodeError when the payload length does not
/// match what the decoder consumed.
DecodedGraph decode(const CodedGraph& coded);

/// File layout:
///   bytes 0..3   "CGRG"
///   byte  4      format version (1)
///   bytes 5..8   header length H, uint32 little-endian
///   next H bytes header JSON {"d","metric","alphabet","nu","lambda","n"}
///   remainder    payload
std::vector<std::uint8_t> serialize(const CodedGraph& coded);
CodedGraph deserialize(std::span<const std::uint8_t> bytes);

inline constexpr std::uint8_t kCodecVersion = 1;

}  // namespace cgrg
