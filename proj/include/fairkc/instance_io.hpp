#pragma once

// Canonical instance files: a JSON object with keys in the order
//   kind, n, k, metric, groups, req      (kind = "fair")
//   kind, n, k, metric, allowed          (kind = "forbidden")
// metric is {"type":"points","norm":..,"coords":[[..],..]} or
// {"type":"matrix","rows":[[..],..]}. Exact values are written as JSON
// integers or "p/q" strings, inexact ones as JSON floats. A file whose
// numbers are all integers or strings (and which does not use L2) loads
// with exact rational distances; anything else loads as double.

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "fairkc/instances.hpp"

namespace fairkc {

using AnyInstance = std::variant<FairInstance<Rational>, FairInstance<double>, ForbiddenInstance<Rational>,
                                 ForbiddenInstance<double>>;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what) {}
};

namespace detail {

using ojson = nlohmann::ordered_json;

inline ojson encode_scalar(const Rational& v) {
  if (v.denominator() == 1) return v.numerator();
  return to_string(v);
}
inline ojson encode_scalar(double v) { return v; }

template <DistanceScalar S>
ojson encode_metric(const MetricSpace<S>& m) {
  ojson out = ojson::object();
  auto rows_of = [](const auto& rows) {
    ojson arr = ojson::array();
    for (const auto& row : rows) {
      ojson r = ojson::array();
      for (const auto& v : row) r.push_back(encode_scalar(v));
      arr.push_back(std::move(r));
    }
    return arr;
  };
  if (m.points()) {
    out["type"] = "points";
    out["norm"] = to_string(m.points()->norm);
    out["coords"] = rows_of(m.points()->coords);
  } else {
    out["type"] = "matrix";
    out["rows"] = rows_of(m.rows());
  }
  return out;
}

// One matrix row per line, everything else inline; leaves use the JSON
// library's number formatting so doubles round-trip.
inline void write_compact(std::ostream& os, const ojson& v, const std::string& indent) {
  const bool table = v.is_array() && !v.empty() &&
                     std::all_of(v.begin(), v.end(), [](const ojson& r) { return r.is_array(); });
  if (table) {
    os << "[\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
      os << indent << "  ";
      write_compact(os, v[i], indent + "  ");
      os << (i + 1 < v.size() ? ",\n" : "\n");
    }
    os << indent << "]";
  } else if (v.is_array()) {
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) os << ", ";
      write_compact(os, v[i], indent);
    }
    os << "]";
  } else if (v.is_object()) {
    os << "{";
    bool first = true;
    for (const auto& [key, value] : v.items()) {
      if (!first) os << ", ";
      first = false;
      os << ojson(key).dump() << ": ";
      write_compact(os, value, indent);
    }
    os << "}";
  } else {
    os << v.dump();
  }
}

inline std::string canonical_dump(const ojson& doc) {
  std::ostringstream os;
  os << "{\n";
  std::size_t i = 0;
  for (const auto& [key, value] : doc.items()) {
    os << "  " << ojson(key).dump() << ": ";
    write_compact(os, value, "  ");
    os << (++i < doc.size() ? ",\n" : "\n");
  }
  os << "}\n";
  return os.str();
}

inline std::string field_path(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

inline const ojson& require(const ojson& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where, "expected a JSON object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where, std::string("missing field '") + key + "'");
  return *it;
}

inline std::size_t decode_index(const ojson& v, const std::string& where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw ParseError(where, "expected a nonnegative integer");
  return v.get<std::size_t>();
}

inline std::vector<std::size_t> decode_index_array(const ojson& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where, "expected an array of nonnegative integers");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(decode_index(v[i], field_path(where, i)));
  return out;
}

inline Rational decode_rational(const ojson& v, const std::string& where) {
  try {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (v.is_string()) return parse_rational(v.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(where, e.what());
  }
  throw ParseError(where, "expected an integer or a \"p/q\" string");
}

inline double decode_double(const ojson& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  return scalar_traits<Rational>::to_double(decode_rational(v, where));
}

template <DistanceScalar S>
S decode_scalar(const ojson& v, const std::string& where) {
  if constexpr (std::is_same_v<S, Rational>) return decode_rational(v, where);
  else return decode_double(v, where);
}

inline const ojson& require_table(const ojson& metric, const char* key, const std::string& where) {
  const auto& table = require(metric, key, where);
  const auto path = where + "." + key;
  if (!table.is_array()) throw ParseError(path, "expected an array of arrays");
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!table[i].is_array()) throw ParseError(field_path(path, i), "expected an array");
    for (std::size_t j = 0; j < table[i].size(); ++j) {
      const auto& x = table[i][j];
      if (!x.is_number() && !x.is_string())
        throw ParseError(field_path(field_path(path, i), j), "expected a number or a \"p/q\" string");
    }
  }
  return table;
}

inline bool table_is_exact(const ojson& table) {
  for (const auto& row : table)
    for (const auto& x : row)
      if (x.is_number_float()) return false;
  return true;
}

template <DistanceScalar S>
std::vector<std::vector<S>> decode_table(const ojson& table, const std::string& path) {
  std::vector<std::vector<S>> out(table.size());
  for (std::size_t i = 0; i < table.size(); ++i)
    for (std::size_t j = 0; j < table[i].size(); ++j)
      out[i].push_back(decode_scalar<S>(table[i][j], field_path(field_path(path, i), j)));
  return out;
}

template <DistanceScalar S>
MetricSpace<S> decode_metric(const ojson& metric, const std::string& where) {
  const auto type = require(metric, "type", where);
  try {
    if (type == "points") {
      const auto norm = parse_norm(require(metric, "norm", where).template get<std::string>());
      const auto& coords = require_table(metric, "coords", where);
      return MetricSpace<S>::from_points(PointCloud<S>{norm, decode_table<S>(coords, where + ".coords")});
    }
    if (type == "matrix") return MetricSpace<S>(decode_table<S>(require_table(metric, "rows", where), where + ".rows"));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(where, e.what());
  }
  throw ParseError(where + ".type", "expected \"points\" or \"matrix\"");
}

template <DistanceScalar S>
AnyInstance decode_body(const ojson& doc, const std::string& kind, MetricSpace<S> metric) {
  const auto n = decode_index(require(doc, "n", ""), "n");
  const auto k = decode_index(require(doc, "k", ""), "k");
  if (metric.size() != n)
    throw ParseError("n", "declares " + std::to_string(n) + " points but the metric has " + std::to_string(metric.size()));
  try {
    if (kind == "fair") {
      auto labels = decode_index_array(require(doc, "groups", ""), "groups");
      auto req = decode_index_array(require(doc, "req", ""), "req");
      if (labels.size() != n) throw ParseError("groups", "has " + std::to_string(labels.size()) + " labels for " + std::to_string(n) + " points");
      const std::size_t t = req.size();
      FairInstance<S> inst(std::move(metric), Grouping(std::move(labels), t), std::move(req));
      if (inst.k() != k) throw ParseError("k", "k = " + std::to_string(k) + " but req sums to " + std::to_string(inst.k()));
      return inst;
    }
    auto allowed = decode_index_array(require(doc, "allowed", ""), "allowed");
    return ForbiddenInstance<S>(std::move(metric), std::move(allowed), k);
  } catch (const InstanceError& e) {
    throw ParseError("", e.what());
  }
}

}  // namespace detail

template <DistanceScalar S>
std::string to_json_string(const FairInstance<S>& inst) {
  detail::ojson doc = detail::ojson::object();
  doc["kind"] = "fair";
  doc["n"] = inst.size();
  doc["k"] = inst.k();
  doc["metric"] = detail::encode_metric(inst.metric());
  doc["groups"] = inst.grouping().labels();
  doc["req"] = inst.req();
  return detail::canonical_dump(doc);
}

template <DistanceScalar S>
std::string to_json_string(const ForbiddenInstance<S>& inst) {
  detail::ojson doc = detail::ojson::object();
  doc["kind"] = "forbidden";
  doc["n"] = inst.size();
  doc["k"] = inst.k();
  doc["metric"] = detail::encode_metric(inst.metric());
  doc["allowed"] = inst.allowed();
  return detail::canonical_dump(doc);
}

inline std::string to_json_string(const AnyInstance& inst) {
  return std::visit([](const auto& i) { return to_json_string(i); }, inst);
}

inline AnyInstance parse_instance(const std::string& text) {
  detail::ojson doc;
  try {
    doc = detail::ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("", e.what());
  }
  const auto& kind_field = detail::require(doc, "kind", "");
  if (!kind_field.is_string() || (kind_field != "fair" && kind_field != "forbidden"))
    throw ParseError("kind", "expected \"fair\" or \"forbidden\"");
  const auto kind = kind_field.get<std::string>();
  const auto& metric = detail::require(doc, "metric", "");
  const auto& type = detail::require(metric, "type", "metric");
  bool exact = false;
  if (type == "points") {
    const auto& norm = detail::require(metric, "norm", "metric");
    exact = norm != "L2" && detail::table_is_exact(detail::require_table(metric, "coords", "metric"));
  } else if (type == "matrix") {
    exact = detail::table_is_exact(detail::require_table(metric, "rows", "metric"));
  }
  if (exact) return detail::decode_body(doc, kind, detail::decode_metric<Rational>(metric, "metric"));
  return detail::decode_body(doc, kind, detail::decode_metric<double>(metric, "metric"));
}

inline AnyInstance read_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path, e.what());
  }
}

template <class Instance>
void write_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json_string(inst);
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace fairkc
