#pragma once

// JSON exchange formats.
//
//   ArcSet:     {"L": <real>, "arcs": [[start, length], ...]}
//   Partition:  {"L": <real>, "parts": [<ArcSet>, ...]}
//   Colouring:  {"k": <int>, "colors": [<int>, ...]}     colours are 1-based

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "smalldiff/circle.hpp"
#include "smalldiff/discrete.hpp"
#include "smalldiff/errors.hpp"

namespace smalldiff {

using json = nlohmann::ordered_json;

/// x rounded to 12 significant digits. Printed reports go through this so that
/// output is stable across platforms; to_json itself keeps full precision so
/// that exchanged sets round-trip exactly.
inline double round12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

inline std::string format12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline json to_json(const ArcSet& a) {
  json arcs = json::array();
  for (const auto& arc : a.arcs()) {
    arcs.push_back({arc.start, arc.length(a.perimeter())});
  }
  return {{"L", a.perimeter()}, {"arcs", std::move(arcs)}};
}

inline json to_json(const Partition& p) {
  json parts = json::array();
  for (const auto& part : p.parts()) parts.push_back(to_json(part));
  return {{"L", p.perimeter()}, {"parts", std::move(parts)}};
}

inline json to_json(const DiscreteColouring& c) {
  return {{"k", c.k()}, {"colors", std::vector<int>(c.colors().begin(), c.colors().end())}};
}

namespace detail {

inline double number_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number()) {
    throw invalid_input(std::string("expected numeric field \"") + key + "\"");
  }
  return j.at(key).get<double>();
}

}  // namespace detail

inline ArcSet arcset_from_json(const json& j) {
  const double L = detail::number_field(j, "L");
  if (!j.contains("arcs") || !j.at("arcs").is_array()) {
    throw invalid_input("expected array field \"arcs\"");
  }
  std::vector<std::pair<double, double>> raw;
  for (const auto& item : j.at("arcs")) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
      throw invalid_input("each arc must be a [start, length] pair of numbers");
    }
    raw.emplace_back(item[0].get<double>(), item[1].get<double>());
  }
  return normalize(raw, L);
}

inline Partition partition_from_json(const json& j) {
  const double L = detail::number_field(j, "L");
  if (!j.contains("parts") || !j.at("parts").is_array()) {
    throw invalid_input("expected array field \"parts\"");
  }
  std::vector<ArcSet> parts;
  for (const auto& item : j.at("parts")) {
    parts.push_back(arcset_from_json(item));
    if (parts.back().perimeter() != L) throw invalid_input("part perimeter differs from L");
  }
  return Partition(Circle(L), std::move(parts));
}

inline DiscreteColouring colouring_from_json(const json& j) {
  if (!j.is_object() || !j.contains("k") || !j.at("k").is_number_integer()) {
    throw invalid_input("expected integer field \"k\"");
  }
  if (!j.contains("colors") || !j.at("colors").is_array()) {
    throw invalid_input("expected array field \"colors\"");
  }
  std::vector<int> colors;
  for (const auto& c : j.at("colors")) {
    if (!c.is_number_integer()) throw invalid_input("colours must be integers");
    colors.push_back(c.get<int>());
  }
  return DiscreteColouring(j.at("k").get<int>(), std::move(colors));
}

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw invalid_input(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace smalldiff
