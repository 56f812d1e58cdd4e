#include "cgrg/codec.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <string>

#include "cgrg/json_io.hpp"
#include "cgrg/range_coder.hpp"

namespace cgrg {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic = {'C', 'G', 'R', 'G'};

// Static models shared by encoder and decoder.
struct Models {
  // color_split[k] = nu(k) / sum_{j >= k} nu(j), k < K - 1
  std::vector<std::uint64_t> color_split;
  SquareMatrix p;
  std::vector<std::uint64_t> q;  // quantized p, row-major

  Models(const ModelSpec& spec, std::size_t n) {
    const std::size_t k = spec.colors();
    std::vector<double> tail(k + 1, 0.0);
    for (std::size_t a = k; a-- > 0;) tail[a] = tail[a + 1] + spec.nu[static_cast<Color>(a)];
    for (std::size_t a = 0; a + 1 < k; ++a)
      color_split.push_back(quantize_probability(spec.nu[static_cast<Color>(a)] / tail[a]));
    if (n >= 2) {
      p = connection_prob(spec, n);
      for (double x : p.data()) q.push_back(quantize_probability(x));
    }
  }
};

std::string pair_name(std::uint32_t u, std::uint32_t v) {
  return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

}  // namespace

CodedGraph encode(const Instance& instance) {
  instance.spec.validate();
  const std::size_t n = instance.n;
  const std::size_t k = instance.spec.colors();
  if (instance.colors.size() != n) throw InvalidArgument("instance has " + std::to_string(instance.colors.size()) +
                                                         " colors for n = " + std::to_string(n));
  const Models models(instance.spec, n);
  BinaryRangeEncoder enc;

  for (Color c : instance.colors) {
    if (c >= k) throw InvalidArgument("color index out of range");
    for (std::size_t a = 0; a + 1 < k; ++a) {
      const bool hit = c == a;
      enc.encode(hit, models.color_split[a]);
      if (hit) break;
    }
  }

  auto edge = instance.edges.begin();
  const auto end = instance.edges.end();
  for (std::uint32_t u = 0; u < n; ++u) {
    const std::size_t row = static_cast<std::size_t>(instance.colors[u]) * k;
    for (std::uint32_t v = u + 1; v < n; ++v) {
      const bool linked = edge != end && edge->u == u && edge->v == v;
      if (linked) ++edge;
      const std::size_t cell = row + instance.colors[v];
      const double p = models.p.data()[cell];
      if (p == 0.0) {
        if (linked) throw UncodableError("edge " + pair_name(u, v) + " has connection probability 0");
      } else if (p == 1.0) {
        if (!linked) throw UncodableError("pair " + pair_name(u, v) + " is unlinked but has connection probability 1");
      } else {
        enc.encode(linked, models.q[cell]);
      }
    }
  }
  if (edge != end) throw InvalidArgument("edge list is not canonical (u < v, sorted, unique, in range)");

  return CodedGraph{instance.spec, n, enc.finish()};
}

DecodedGraph decode(const CodedGraph& coded) {
  coded.spec.validate();
  const std::size_t n = coded.n;
  const std::size_t k = coded.spec.colors();
  const Models models(coded.spec, n);
  BinaryRangeDecoder dec(coded.payload);
  std::size_t symbols = 0;

  DecodedGraph out;
  out.colors.resize(n);
  for (auto& c : out.colors) {
    std::size_t a = 0;
    for (; a + 1 < k; ++a) {
      ++symbols;
      if (dec.decode(models.color_split[a])) break;
    }
    c = static_cast<Color>(a);
  }

  for (std::uint32_t u = 0; u < n; ++u) {
    const std::size_t row = static_cast<std::size_t>(out.colors[u]) * k;
    for (std::uint32_t v = u + 1; v < n; ++v) {
      const std::size_t cell = row + out.colors[v];
      const double p = models.p.data()[cell];
      bool linked;
      if (p == 0.0) {
        linked = false;
      } else if (p == 1.0) {
        linked = true;
      } else {
        ++symbols;
        linked = dec.decode(models.q[cell]);
      }
      if (linked) out.edges.push_back({u, v});
    }
    if (dec.position() > coded.payload.size() + 8) throw DecodeError("payload ended prematurely");
  }

  const std::size_t expected = symbols == 0 ? 0 : dec.shifts() + 2;
  if (coded.payload.size() != expected)
    throw DecodeError("payload is " + std::to_string(coded.payload.size()) + " bytes, decoder expected " +
                      std::to_string(expected));
  return out;
}

std::vector<std::uint8_t> serialize(const CodedGraph& coded) {
  JsonWriter w;
  w.begin_object();
  write_spec_fields(w, coded.spec);
  w.key("n").value(coded.n);
  w.end_object();
  const std::string& header = w.str();

  std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
  out.push_back(kCodecVersion);
  const auto len = static_cast<std::uint32_t>(header.size());
  for (int s = 0; s < 32; s += 8) out.push_back(static_cast<std::uint8_t>(len >> s));
  out.insert(out.end(), header.begin(), header.end());
  out.insert(out.end(), coded.payload.begin(), coded.payload.end());
  return out;
}

CodedGraph deserialize(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 9 || !std::equal(kMagic.begin(), kMagic.end(), bytes.begin()))
    throw DecodeError("not a coded graph file (bad magic)");
  if (bytes[4] != kCodecVersion) throw DecodeError("unsupported format version " + std::to_string(bytes[4]));
  std::uint32_t len = 0;
  for (int s = 0; s < 4; ++s) len |= static_cast<std::uint32_t>(bytes[5 + static_cast<std::size_t>(s)]) << (8 * s);
  if (bytes.size() < 9 + static_cast<std::size_t>(len)) throw DecodeError("truncated header");
  const std::string header(bytes.begin() + 9, bytes.begin() + 9 + len);

  nlohmann::json j;
  try {
    j = nlohmann::json::parse(header);
  } catch (const nlohmann::json::exception& e) {
    throw DecodeError(std::string("malformed header: ") + e.what());
  }
  CodedGraph coded;
  try {
    coded.spec = spec_from_json(j);
    coded.n = j.at("n").get<std::size_t>();
  } catch (const InvalidArgument& e) {
    throw DecodeError(std::string("malformed header: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw DecodeError(std::string("malformed header: ") + e.what());
  }
  coded.payload.assign(bytes.begin() + 9 + len, bytes.end());
  return coded;
}

}  // namespace cgrg
