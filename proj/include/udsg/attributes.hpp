#pragma once

#include <map>
#include <string>
#include <variant>

namespace udsg {

/// Attribute values on graph nodes and edges. Structural attributes
/// (domain, type, form, ...) are strings, token positions are integers,
/// and normalized annotation values are doubles.
using AttrValue = std::variant<std::string, long long, double>;
using AttrMap = std::map<std::string, AttrValue>;

inline bool is_numeric(const AttrValue& v) {
  return std::holds_alternative<long long>(v) || std::holds_alternative<double>(v);
}

inline double as_double(const AttrValue& v) {
  if (const auto* i = std::get_if<long long>(&v)) return static_cast<double>(*i);
  return std::get<double>(v);
}

inline std::string attr_string(const AttrValue& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  return {};
}

inline std::string attr_string(const AttrMap& m, const std::string& key) {
  auto it = m.find(key);
  if (it == m.end()) return {};
  if (const auto* s = std::get_if<std::string>(&it->second)) return *s;
  return {};
}

}  // namespace udsg
