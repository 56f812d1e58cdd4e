#include "cgrg/json_io.hpp"

#include <cmath>

#include <fmt/format.h>

namespace cgrg {

using nlohmann::json;

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  return fmt::format("{:.17g}", x);
}

void JsonWriter::separator() {
  if (need_comma_) out_ += ',';
  need_comma_ = true;
}

JsonWriter& JsonWriter::begin_object() {
  separator();
  out_ += '{';
  need_comma_ = false;
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += '}';
  need_comma_ = true;
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separator();
  out_ += '[';
  need_comma_ = false;
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += ']';
  need_comma_ = true;
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view k) {
  separator();
  out_ += json(std::string(k)).dump();
  out_ += ':';
  need_comma_ = false;
  return *this;
}

JsonWriter& JsonWriter::value(double x) {
  separator();
  out_ += format_double(x);
  return *this;
}

JsonWriter& JsonWriter::value(std::int64_t x) {
  separator();
  out_ += std::to_string(x);
  return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t x) {
  separator();
  out_ += std::to_string(x);
  return *this;
}

JsonWriter& JsonWriter::value(bool x) {
  separator();
  out_ += x ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view s) {
  separator();
  out_ += json(std::string(s)).dump();
  return *this;
}

JsonWriter& JsonWriter::null() {
  separator();
  out_ += "null";
  return *this;
}

JsonWriter& JsonWriter::raw(std::string_view text) {
  separator();
  out_ += text;
  return *this;
}

JsonWriter& JsonWriter::matrix(const SquareMatrix& m) {
  begin_array();
  for (std::size_t a = 0; a < m.size(); ++a) {
    begin_array();
    for (std::size_t b = 0; b < m.size(); ++b) value(m(a, b));
    end_array();
  }
  return end_array();
}

void write_spec_fields(JsonWriter& w, const ModelSpec& spec) {
  w.key("d").value(spec.d);
  w.key("metric").value(to_string(spec.metric));
  w.key("alphabet").begin_array();
  for (const auto& s : spec.alphabet.symbols()) w.value(s);
  w.end_array();
  w.key("nu").begin_array();
  for (double x : spec.nu.measure().weights()) w.value(x);
  w.end_array();
  w.key("lambda").matrix(spec.lambda.matrix());
}

namespace {

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw InvalidArgument(std::string("missing field '") + name + "'");
  return *it;
}

template <class T>
T get_as(const json& j, const char* name) {
  try {
    return field(j, name).get<T>();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("field '") + name + "': " + e.what());
  }
}

}  // namespace

ModelSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgument("model description must be a JSON object");
  const int d = get_as<int>(j, "d");
  const auto nu = get_as<std::vector<double>>(j, "nu");
  const auto lambda = get_as<std::vector<std::vector<double>>>(j, "lambda");
  std::vector<std::string> alphabet;
  if (j.contains("alphabet")) alphabet = get_as<std::vector<std::string>>(j, "alphabet");
  MetricMode metric = MetricMode::Torus;
  if (j.contains("metric")) metric = parse_metric(get_as<std::string>(j, "metric"));
  return make_spec(d, nu, lambda, metric, alphabet);
}

std::string instance_to_json(const Instance& inst) {
  JsonWriter w;
  w.begin_object();
  w.key("d").value(inst.spec.d);
  w.key("n").value(inst.n);
  w.key("seed").value(inst.seed);
  w.key("metric").value(to_string(inst.spec.metric));
  w.key("alphabet").begin_array();
  for (const auto& s : inst.spec.alphabet.symbols()) w.value(s);
  w.end_array();
  w.key("nu").begin_array();
  for (double x : inst.spec.nu.measure().weights()) w.value(x);
  w.end_array();
  w.key("lambda").matrix(inst.spec.lambda.matrix());
  w.key("positions").begin_array();
  for (std::size_t i = 0; i < inst.positions.size(); ++i) {
    w.begin_array();
    for (double x : inst.positions[i]) w.value(x);
    w.end_array();
  }
  w.end_array();
  w.key("colors").begin_array();
  for (Color c : inst.colors) w.value(static_cast<std::uint64_t>(c));
  w.end_array();
  w.key("edges").begin_array();
  for (const Edge& e : inst.edges) {
    w.begin_array().value(static_cast<std::uint64_t>(e.u)).value(static_cast<std::uint64_t>(e.v)).end_array();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

Instance instance_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("instance is not valid JSON: ") + e.what());
  }
  Instance inst;
  inst.spec = spec_from_json(j);
  inst.n = get_as<std::size_t>(j, "n");
  inst.seed = get_as<std::uint64_t>(j, "seed");
  const auto positions = get_as<std::vector<std::vector<double>>>(j, "positions");
  std::vector<double> coords;
  coords.reserve(positions.size() * static_cast<std::size_t>(inst.spec.d));
  for (const auto& p : positions) {
    if (static_cast<int>(p.size()) != inst.spec.d) throw InvalidArgument("position has wrong dimension");
    coords.insert(coords.end(), p.begin(), p.end());
  }
  inst.positions = PointSet(inst.spec.d, std::move(coords));
  inst.colors = get_as<std::vector<Color>>(j, "colors");
  for (const auto& e : get_as<std::vector<std::vector<std::uint32_t>>>(j, "edges")) {
    if (e.size() != 2) throw InvalidArgument("edge must be a pair [i, j]");
    inst.edges.push_back({e[0], e[1]});
  }
  return inst;
}

std::string measures_to_json(const EmpiricalPair& pair) {
  JsonWriter w;
  w.begin_object();
  w.key("l1").begin_array();
  for (double x : pair.l1.weights()) w.value(x);
  w.end_array();
  w.key("l2").matrix(pair.l2.weights());
  w.key("n").value(pair.n);
  w.key("edge_count").value(pair.edge_count);
  w.key("l2_mass").value(pair.l2.mass());
  w.end_object();
  return w.str();
}

}  // namespace cgrg
