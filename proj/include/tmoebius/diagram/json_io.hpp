#pragma once

#include "tmoebius/diagram/floor_diagram.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace tmoebius {

using json = nlohmann::json;

struct DiagramDocument {
  std::optional<SurfaceKind> surface;
  FloorDiagram diagram;
};

inline json to_json(const FloorDiagram& d, std::optional<SurfaceKind> s = std::nullopt) {
  json j;
  if (s) j["surface"] = surface_name(*s);
  j["vertices"] = json::array();
  for (std::size_t i = 0; i < d.vertices.size(); ++i) {
    const auto& v = d.vertices[i];
    json vj{{"id", i}, {"kind", kind_name(v.kind)}};
    if (v.is_floor() && v.degree != HalfInt()) vj["degree"] = v.degree.to_string();
    j["vertices"].push_back(vj);
  }
  j["edges"] = json::array();
  for (const auto& e : d.edges) {
    json ej{{"tail", e.tail}, {"head", e.head}};
    if (e.weight != 0) ej["weight"] = e.weight;
    j["edges"].push_back(ej);
  }
  j["ends"] = json::array();
  for (const auto& e : d.ends) {
    json ej{{"source", e.source}};
    if (e.weight != 0) ej["weight"] = e.weight;
    j["ends"].push_back(ej);
  }
  return j;
}

namespace detail {

inline std::string id_key(const json& id) {
  if (id.is_number_integer()) return "#" + std::to_string(id.get<long long>());
  if (id.is_string()) return "#" + id.get<std::string>();
  throw std::invalid_argument("vertex ids must be integers or strings");
}

}  // namespace detail

/// Unknown vertex references become index -1, which validate() reports as a
/// structural error. Malformed documents throw std::invalid_argument.
inline DiagramDocument diagram_from_json(const json& j) {
  DiagramDocument doc;
  if (!j.is_object()) throw std::invalid_argument("diagram must be a JSON object");
  if (j.contains("surface")) doc.surface = parse_surface(j.at("surface").get<std::string>());
  std::map<std::string, int> index;
  for (const auto& vj : j.value("vertices", json::array())) {
    std::string key = vj.contains("id") ? detail::id_key(vj.at("id")) : "#" + std::to_string(index.size());
    if (index.count(key)) throw std::invalid_argument("duplicate vertex id " + key.substr(1));
    std::string kind = vj.at("kind").get<std::string>();
    Vertex v;
    if (kind == "ground") {
      v.kind = VertexKind::Ground;
    } else if (kind == "etage") {
      v.kind = VertexKind::Etage;
    } else if (kind == "joint") {
      v.kind = VertexKind::Joint;
    } else {
      throw std::invalid_argument("unknown vertex kind '" + kind + "'");
    }
    if (vj.contains("degree")) {
      const auto& dj = vj.at("degree");
      v.degree = dj.is_string() ? HalfInt::parse(dj.get<std::string>())
                                : HalfInt::from_integer(dj.get<std::int64_t>());
    }
    index[key] = static_cast<int>(doc.diagram.vertices.size());
    doc.diagram.vertices.push_back(v);
  }
  auto lookup = [&](const json& id) {
    auto it = index.find(detail::id_key(id));
    return it == index.end() ? -1 : it->second;
  };
  for (const auto& ej : j.value("edges", json::array())) {
    doc.diagram.edges.push_back({lookup(ej.at("tail")), lookup(ej.at("head")), ej.value("weight", 0)});
  }
  for (const auto& ej : j.value("ends", json::array())) {
    doc.diagram.ends.push_back({lookup(ej.at("source")), ej.value("weight", 0)});
  }
  return doc;
}

inline DiagramDocument diagram_from_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
  try {
    return diagram_from_json(j);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed diagram: ") + e.what());
  }
}

}  // namespace tmoebius
