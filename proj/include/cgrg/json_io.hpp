#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "cgrg/measures.hpp"
#include "cgrg/model.hpp"

namespace cgrg {

/// Decimal with 17 significant digits, enough to round-trip any double.
/// Non-finite values become null.
std::string format_double(double x);

/// Compact JSON writer for the fixed schemas below. Keys are written in the
/// order given; floats always carry 17 significant digits.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);
  JsonWriter& value(double x);
  JsonWriter& value(std::int64_t x);
  JsonWriter& value(std::uint64_t x);
  JsonWriter& value(int x) { return value(static_cast<std::int64_t>(x)); }
  JsonWriter& value(bool x);
  JsonWriter& value(std::string_view s);
  JsonWriter& value(const char* s) { return value(std::string_view(s)); }
  JsonWriter& null();
  JsonWriter& raw(std::string_view json);
  JsonWriter& matrix(const SquareMatrix& m);

  const std::string& str() const { return out_; }

 private:
  void separator();
  std::string out_;
  bool need_comma_ = false;
};

/// Writes the model fields d, metric, alphabet, nu, lambda into an open object.
void write_spec_fields(JsonWriter& w, const ModelSpec& spec);
/// Reads the same fields; throws InvalidArgument on missing or malformed data.
ModelSpec spec_from_json(const nlohmann::json& j);

/// {"d","n","seed","metric","alphabet","nu","lambda","positions","colors","edges"}
std::string instance_to_json(const Instance& instance);
Instance instance_from_json(std::string_view text);

/// {"l1","l2","n","edge_count","l2_mass"}
std::string measures_to_json(const EmpiricalPair& pair);

}  // namespace cgrg
