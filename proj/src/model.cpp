#include "cgrg/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <iterator>

#include "cgrg/rng.hpp"

namespace cgrg {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw InvalidArgument("alphabet must contain at least one color");
  std::set<std::string> seen;
  for (const auto& s : symbols_)
    if (!seen.insert(s).second) throw InvalidArgument("duplicate color name '" + s + "'");
}

Color Alphabet::index_of(const std::string& name) const {
  auto it = std::find(symbols_.begin(), symbols_.end(), name);
  if (it == symbols_.end()) throw InvalidArgument("unknown color '" + name + "'");
  return static_cast<Color>(it - symbols_.begin());
}

SensorLaw::SensorLaw(std::vector<double> probs) : p_(std::move(probs)) {
  for (double x : p_.weights())
    if (!(x > 0.0)) throw InvalidArgument("sensor law entries must be strictly positive");
}

RadiusKernel::RadiusKernel(SquareMatrix lambda) : m_(std::move(lambda)) {
  if (m_.size() == 0) throw InvalidArgument("radius kernel must be nonempty");
  bool any = false;
  for (double x : m_.data()) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidArgument("radius kernel entries must be finite and >= 0");
    any = any || x > 0.0;
  }
  if (!any) throw InvalidArgument("radius kernel is identically zero");
  if (!m_.is_symmetric()) throw InvalidArgument("radius kernel must be symmetric");
}

RadiusKernel RadiusKernel::scaled(double c) const {
  if (!(c > 0.0)) throw InvalidArgument("kernel scale must be positive");
  SquareMatrix m = m_;
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = 0; b < m.size(); ++b) m(a, b) *= c;
  return RadiusKernel(std::move(m));
}

void ModelSpec::validate() const {
  if (d < 2) throw InvalidArgument("dimension must be at least 2, got " + std::to_string(d));
  const std::size_t k = alphabet.size();
  if (k == 0) throw InvalidArgument("alphabet must contain at least one color");
  if (nu.size() != k)
    throw InvalidArgument("sensor law has " + std::to_string(nu.size()) + " entries for " + std::to_string(k) +
                          " colors");
  if (lambda.size() != k)
    throw InvalidArgument("radius kernel is " + std::to_string(lambda.size()) + "x" + std::to_string(lambda.size()) +
                          " for " + std::to_string(k) + " colors");
}

ModelSpec make_spec(int d, std::vector<double> nu, const std::vector<std::vector<double>>& lambda, MetricMode metric,
                    std::vector<std::string> symbols) {
  if (symbols.empty())
    for (std::size_t a = 0; a < nu.size(); ++a) symbols.push_back("c" + std::to_string(a));
  ModelSpec spec{d, Alphabet(std::move(symbols)), SensorLaw(std::move(nu)),
                 RadiusKernel(SquareMatrix::from_rows(lambda)), metric};
  spec.validate();
  return spec;
}

double radius_of(const ModelSpec& spec, std::size_t n, Color a, Color b) {
  if (n < 2) throw InvalidArgument("radius is defined for n >= 2, got n = " + std::to_string(n));
  const double nd = static_cast<double>(n);
  return std::pow(spec.lambda(a, b) * std::log(nd) / nd, 1.0 / spec.d);
}

SquareMatrix connection_prob(const ModelSpec& spec, std::size_t n) {
  spec.validate();
  if (n < 2) throw InvalidArgument("connection probabilities are defined for n >= 2, got n = " + std::to_string(n));
  const std::size_t k = spec.colors();
  const double rho = ball_volume(spec.d);
  const double nd = static_cast<double>(n);
  SquareMatrix p(k);
  for (Color a = 0; a < k; ++a)
    for (Color b = 0; b < k; ++b) {
      if (spec.metric == MetricMode::Torus && radius_of(spec, n, a, b) > 0.5)
        throw RegimeError("n = " + std::to_string(n) + " too small for this lambda: radius r_n(" +
                          std::to_string(a) + "," + std::to_string(b) + ") exceeds 1/2 on the torus");
      p(a, b) = rho * spec.lambda(a, b) * std::log(nd) / nd;
      if (p(a, b) > 1.0)
        throw RegimeError("n = " + std::to_string(n) + " too small for this lambda: connection probability p_n(" +
                          std::to_string(a) + "," + std::to_string(b) + ") exceeds 1");
    }
  return p;
}

namespace {

SquareMatrix radius_matrix(const ModelSpec& spec, std::size_t n) {
  SquareMatrix r(spec.colors());
  for (Color a = 0; a < spec.colors(); ++a)
    for (Color b = 0; b < spec.colors(); ++b) r(a, b) = radius_of(spec, n, a, b);
  return r;
}

bool linked(const ModelSpec& spec, const SquareMatrix& radii, Point p, Point q, Color a, Color b) {
  return distance(p, q, spec.metric) <= radii(a, b);
}

}  // namespace

Instance generate(const ModelSpec& spec, std::size_t n, std::uint64_t seed) {
  spec.validate();
  if (n > 0xffffffffULL) throw InvalidArgument("n exceeds the 32-bit vertex index range");
  Instance inst{spec, n, seed, PointSet(spec.d), {}, {}};

  Engine pos_rng = make_engine(seed, Stream::Positions);
  std::vector<double> coords(n * static_cast<std::size_t>(spec.d));
  for (double& x : coords) x = uniform01(pos_rng);
  inst.positions = PointSet(spec.d, std::move(coords));

  Engine color_rng = make_engine(seed, Stream::Colors);
  std::vector<double> cumulative(spec.colors());
  double acc = 0.0;
  for (Color a = 0; a < spec.colors(); ++a) cumulative[a] = (acc += spec.nu[a]);
  inst.colors.resize(n);
  for (auto& c : inst.colors) {
    const double u = uniform01(color_rng);
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    c = static_cast<Color>(std::min<std::ptrdiff_t>(it - cumulative.begin(), static_cast<std::ptrdiff_t>(spec.colors()) - 1));
  }

  if (n < 2) return inst;
  connection_prob(spec, n);  // regime guard

  const SquareMatrix radii = radius_matrix(spec, n);
  const double side = std::min(1.0, *std::max_element(radii.data().begin(), radii.data().end()));
  const CellGrid grid(inst.positions, side, spec.metric);

  std::vector<std::size_t> scratch;
  std::vector<std::uint32_t> found;
  for (std::size_t i = 0; i < n; ++i) {
    found.clear();
    const Point pi = inst.positions[i];
    const Color ci = inst.colors[i];
    grid.for_each_candidate(i, scratch, [&](std::size_t j) {
      if (j > i && linked(spec, radii, pi, inst.positions[j], ci, inst.colors[j]))
        found.push_back(static_cast<std::uint32_t>(j));
    });
    std::sort(found.begin(), found.end());
    for (std::uint32_t j : found) inst.edges.push_back({static_cast<std::uint32_t>(i), j});
  }
  return inst;
}

std::vector<Edge> brute_force_edges(const ModelSpec& spec, const PointSet& positions, const std::vector<Color>& colors) {
  std::vector<Edge> edges;
  const std::size_t n = positions.size();
  if (n < 2) return edges;
  const SquareMatrix radii = radius_matrix(spec, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (linked(spec, radii, positions[i], positions[j], colors[i], colors[j]))
        edges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
  return edges;
}

std::string_view to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::SizeMismatch: return "size mismatch";
    case Violation::Kind::PositionOutOfRange: return "position out of range";
    case Violation::Kind::ColorOutOfRange: return "color out of range";
    case Violation::Kind::SelfLoop: return "self-loop";
    case Violation::Kind::NonCanonicalEdge: return "non-canonical edge";
    case Violation::Kind::UnsortedEdges: return "unsorted edges";
    case Violation::Kind::DuplicateEdge: return "duplicate edge";
    case Violation::Kind::MissingEdge: return "missing edge";
    case Violation::Kind::SpuriousEdge: return "spurious edge";
  }
  return "unknown";
}

std::vector<Violation> validate(const Instance& inst) {
  using K = Violation::Kind;
  std::vector<Violation> out;
  auto report = [&](K kind, std::string msg) { out.push_back({kind, std::move(msg)}); };
  auto edge_str = [](const Edge& e) { return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")"; };

  try {
    inst.spec.validate();
  } catch (const InvalidArgument& e) {
    report(K::SizeMismatch, e.what());
    return out;
  }
  const std::size_t n = inst.n;
  if (inst.positions.size() != n || inst.colors.size() != n ||
      (n > 0 && inst.positions.dimension() != inst.spec.d)) {
    report(K::SizeMismatch, "expected " + std::to_string(n) + " positions and colors in dimension " +
                                std::to_string(inst.spec.d));
    return out;
  }
  bool geometry_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (double x : inst.positions[i])
      if (!(x >= 0.0 && x < 1.0)) {
        report(K::PositionOutOfRange, "vertex " + std::to_string(i) + " has a coordinate outside [0,1)");
        geometry_ok = false;
        break;
      }
    if (inst.colors[i] >= inst.spec.colors()) {
      report(K::ColorOutOfRange, "vertex " + std::to_string(i) + " has color " + std::to_string(inst.colors[i]));
      geometry_ok = false;
    }
  }

  std::vector<Edge> canonical;
  const Edge* prev = nullptr;
  for (const Edge& e : inst.edges) {
    if (e.u >= n || e.v >= n) {
      report(K::SizeMismatch, "edge " + edge_str(e) + " references a vertex outside [0," + std::to_string(n) + ")");
      continue;
    }
    if (e.u == e.v) {
      report(K::SelfLoop, "edge " + edge_str(e) + " is a self-loop");
      continue;
    }
    if (e.u > e.v) {
      report(K::NonCanonicalEdge, "edge " + edge_str(e) + " is not stored with u < v");
      continue;
    }
    if (prev != nullptr && e < *prev)
      report(K::UnsortedEdges, "edge " + edge_str(e) + " follows " + edge_str(*prev));
    canonical.push_back(e);
    prev = &e;
  }
  if (!geometry_ok) return out;

  std::sort(canonical.begin(), canonical.end());
  for (std::size_t k = 1; k < canonical.size(); ++k)
    if (canonical[k] == canonical[k - 1])
      report(K::DuplicateEdge, "edge " + edge_str(canonical[k]) + " appears more than once");
  canonical.erase(std::unique(canonical.begin(), canonical.end()), canonical.end());
  const std::vector<Edge> expected = brute_force_edges(inst.spec, inst.positions, inst.colors);
  std::vector<Edge> diff;
  std::set_difference(expected.begin(), expected.end(), canonical.begin(), canonical.end(), std::back_inserter(diff));
  for (const Edge& e : diff) report(K::MissingEdge, "pair " + edge_str(e) + " is within range but not linked");
  diff.clear();
  std::set_difference(canonical.begin(), canonical.end(), expected.begin(), expected.end(), std::back_inserter(diff));
  for (const Edge& e : diff) report(K::SpuriousEdge, "edge " + edge_str(e) + " is out of range");
  return out;
}

}  // namespace cgrg
