#include "maxavg/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "maxavg/errors.hpp"

namespace maxavg {
namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

const json& require_array(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key) || !doc.at(key).is_array())
    throw InputError(std::string("expected an object with array field \"") + key + "\"");
  return doc.at(key);
}

Index require_integer(const json& v) {
  if (v.is_number_integer()) return v.get<Index>();
  if (v.is_number_float()) {
    double d = v.get<double>();
    if (d == static_cast<double>(static_cast<Index>(d))) return static_cast<Index>(d);
  }
  throw InputError("expected an integer, got " + v.dump());
}

template <class T>
T scalar_from_json(const json& v);

template <>
Rational scalar_from_json<Rational>(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.dump());
  if (v.is_number_float()) return rational_from_shortest_decimal(v.get<double>());
  throw InputError("tuple values must be numbers or \"p/q\" strings, got " + v.dump());
}

template <>
double scalar_from_json<double>(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_rational(v.get<std::string>()).get_d();
  throw InputError("tuple values must be numbers or \"p/q\" strings, got " + v.dump());
}

}  // namespace

template <class T>
PeriodicTuple<T> parse_tuple(const std::string& json_text) {
  const json doc = parse_json(json_text);
  std::vector<T> values;
  for (const auto& v : require_array(doc, "values")) values.push_back(scalar_from_json<T>(v));
  return PeriodicTuple<T>(std::move(values));
}

RadiusTuple parse_radii(const std::string& json_text) {
  const json doc = parse_json(json_text);
  std::vector<Index> radii;
  for (const auto& v : require_array(doc, "radii")) radii.push_back(require_integer(v));
  return RadiusTuple(std::move(radii));
}

SubsetCollectionSystem parse_subset_system(const std::string& json_text) {
  const json doc = parse_json(json_text);
  const json& colls = require_array(doc, "collections");
  std::vector<std::vector<SubsetCollectionSystem::Subset>> out;
  for (const auto& coll : colls) {
    if (!coll.is_array()) throw InputError("each collection must be an array of subsets");
    auto& dst = out.emplace_back();
    for (const auto& subset : coll) {
      if (!subset.is_array()) throw InputError("each subset must be an array of indices");
      auto& s = dst.emplace_back();
      for (const auto& idx : subset) s.push_back(require_integer(idx));
    }
  }
  const auto n = static_cast<Index>(out.size());
  return SubsetCollectionSystem(n, std::move(out));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template PeriodicTuple<double> parse_tuple<double>(const std::string&);
template PeriodicTuple<Rational> parse_tuple<Rational>(const std::string&);

}  // namespace maxavg
