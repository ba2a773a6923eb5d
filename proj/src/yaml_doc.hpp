#pragma once

// Line-aware reading of JSON/YAML input documents.

#include "contact9/errors.hpp"
#include "contact9/integer.hpp"

#include <yaml-cpp/yaml.h>

#include <string>
#include <vector>

namespace contact9::io {

inline int line_of(const YAML::Node& node) {
  const auto mark = node.Mark();
  return mark.line >= 0 ? mark.line + 1 : 0;
}

inline YAML::Node load_document(const std::string& text) {
  try {
    YAML::Node root = YAML::Load(text);
    if (!root.IsMap()) throw ParseError("", line_of(root), "document must be a mapping");
    return root;
  } catch (const YAML::ParserException& e) {
    throw ParseError("", e.mark.line + 1, e.msg);
  }
}

inline YAML::Node require(const YAML::Node& parent, const std::string& key, const std::string& path) {
  YAML::Node n = parent[key];
  if (!n) throw ParseError(path.empty() ? key : path + "." + key, line_of(parent), "missing required field");
  return n;
}

inline std::string child_path(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

inline std::string index_path(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

inline const YAML::Node& expect_sequence(const YAML::Node& n, const std::string& path) {
  if (!n.IsSequence()) throw ParseError(path, line_of(n), "expected a list");
  return n;
}

inline const YAML::Node& expect_map(const YAML::Node& n, const std::string& path) {
  if (!n.IsMap()) throw ParseError(path, line_of(n), "expected a mapping");
  return n;
}

inline Integer as_integer(const YAML::Node& n, const std::string& path) {
  if (!n.IsScalar()) throw ParseError(path, line_of(n), "expected an integer");
  const std::string& s = n.Scalar();
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (s.size() == start) throw ParseError(path, line_of(n), "expected an integer, got '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw ParseError(path, line_of(n), "expected an integer, got '" + s + "'");
  }
  return Integer(s[0] == '+' ? s.substr(1) : s);
}

inline long long as_int(const YAML::Node& n, const std::string& path) {
  Integer v = as_integer(n, path);
  if (v > Integer(1LL << 40) || v < -Integer(1LL << 40)) throw ParseError(path, line_of(n), "integer out of range");
  return v.convert_to<long long>();
}

inline std::size_t as_index(const YAML::Node& n, const std::string& path) {
  long long v = as_int(n, path);
  if (v < 0) throw ParseError(path, line_of(n), "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

inline bool as_bool(const YAML::Node& n, const std::string& path) {
  if (!n.IsScalar()) throw ParseError(path, line_of(n), "expected a boolean");
  const std::string& s = n.Scalar();
  if (s == "true") return true;
  if (s == "false") return false;
  throw ParseError(path, line_of(n), "expected a boolean, got '" + s + "'");
}

inline std::string as_string(const YAML::Node& n, const std::string& path) {
  if (!n.IsScalar()) throw ParseError(path, line_of(n), "expected a string");
  return n.Scalar();
}

}  // namespace contact9::io
