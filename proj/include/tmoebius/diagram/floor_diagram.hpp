#pragma once

#include "tmoebius/core/half_int.hpp"
#include "tmoebius/core/partition.hpp"

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace tmoebius {

enum class VertexKind { Ground, Etage, Joint };

inline const char* kind_name(VertexKind k) {
  switch (k) {
    case VertexKind::Ground: return "ground";
    case VertexKind::Etage: return "etage";
    case VertexKind::Joint: return "joint";
  }
  return "?";
}

/// δ ∈ {0, 1}: the two tropical Möbius strips.
enum class SurfaceKind { M0 = 0, M1 = 1 };

inline int delta(SurfaceKind s) { return s == SurfaceKind::M0 ? 0 : 1; }
inline const char* surface_name(SurfaceKind s) { return s == SurfaceKind::M0 ? "m0" : "m1"; }
inline SurfaceKind parse_surface(const std::string& text) {
  if (text == "m0" || text == "0") return SurfaceKind::M0;
  if (text == "m1" || text == "1") return SurfaceKind::M1;
  throw std::invalid_argument("surface must be m0 or m1, got '" + text + "'");
}

/// Class aE + bF.
struct HomologyClass {
  HalfInt a;
  HalfInt b;

  /// 2b ≡ 2δa mod 2.
  bool valid_for(SurfaceKind s) const {
    if (a < HalfInt() || b < HalfInt()) return false;
    std::int64_t lhs = b.doubled() % 2;
    std::int64_t rhs = (delta(s) * a.doubled()) % 2;
    return lhs == rhs;
  }

  std::string to_string() const { return a.to_string() + "E+" + b.to_string() + "F"; }
  bool operator==(const HomologyClass&) const = default;
};

/// Degree zero means "not assigned" (shapes); floors always carry a positive degree.
struct Vertex {
  VertexKind kind = VertexKind::Etage;
  HalfInt degree;

  bool is_floor() const { return kind != VertexKind::Joint; }
  bool operator==(const Vertex&) const = default;
};

/// Bounded elevator, oriented tail → head. Weight zero means "not assigned".
struct Edge {
  int tail = 0;
  int head = 0;
  int weight = 0;
  bool operator==(const Edge&) const = default;
};

/// Infinite elevator leaving `source`.
struct End {
  int source = 0;
  int weight = 0;
  bool operator==(const End&) const = default;
};

/// Vertex, edge and end ids are their positions in the respective lists.
struct FloorDiagram {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<End> ends;

  int add_vertex(VertexKind kind, HalfInt degree = HalfInt()) {
    vertices.push_back({kind, degree});
    return static_cast<int>(vertices.size()) - 1;
  }
  int add_edge(int tail, int head, int weight = 0) {
    edges.push_back({tail, head, weight});
    return static_cast<int>(edges.size()) - 1;
  }
  int add_end(int source, int weight = 0) {
    ends.push_back({source, weight});
    return static_cast<int>(ends.size()) - 1;
  }

  int floor_count() const {
    int n = 0;
    for (const auto& v : vertices) n += v.is_floor() ? 1 : 0;
    return n;
  }
  int count(VertexKind k) const {
    int n = 0;
    for (const auto& v : vertices) n += v.kind == k ? 1 : 0;
    return n;
  }

  /// Sum of weights of elevators (bounded and infinite) leaving v.
  std::int64_t out_weight(int v) const {
    std::int64_t s = 0;
    for (const auto& e : edges) s += e.tail == v ? e.weight : 0;
    for (const auto& e : ends) s += e.source == v ? e.weight : 0;
    return s;
  }
  std::int64_t in_weight(int v) const {
    std::int64_t s = 0;
    for (const auto& e : edges) s += e.head == v ? e.weight : 0;
    return s;
  }
  int in_degree(int v) const {
    int n = 0;
    for (const auto& e : edges) n += e.head == v ? 1 : 0;
    return n;
  }
  int out_degree(int v) const {
    int n = 0;
    for (const auto& e : edges) n += e.tail == v ? 1 : 0;
    for (const auto& e : ends) n += e.source == v ? 1 : 0;
    return n;
  }
  /// Number of adjacent elevators (bounded and infinite), the valence of a floor.
  int valence(int v) const { return in_degree(v) + out_degree(v); }

  /// Weights of all elevators adjacent to v.
  std::vector<int> adjacent_weights(int v) const {
    std::vector<int> w;
    for (const auto& e : edges) {
      if (e.tail == v || e.head == v) w.push_back(e.weight);
    }
    for (const auto& e : ends) {
      if (e.source == v) w.push_back(e.weight);
    }
    return w;
  }

  bool operator==(const FloorDiagram&) const = default;
};

struct Violation {
  std::string condition;  // "structure", "A", "B", "C", "acyclic", "connected", "degree", "weight", "ends"
  std::string element;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> structural;
  std::vector<Violation> violations;

  bool ok() const { return structural.empty() && violations.empty(); }
  std::string to_string() const {
    std::string s;
    for (const auto* list : {&structural, &violations}) {
      for (const auto& v : *list) {
        if (!s.empty()) s += "; ";
        s += "[" + v.condition + "] " + v.element + ": " + v.message;
      }
    }
    return s.empty() ? "ok" : s;
  }
};

namespace detail {

inline bool is_acyclic(const FloorDiagram& d) {
  const int n = static_cast<int>(d.vertices.size());
  std::vector<int> indeg(n, 0);
  for (const auto& e : d.edges) ++indeg[e.head];
  std::vector<int> stack;
  for (int v = 0; v < n; ++v) {
    if (indeg[v] == 0) stack.push_back(v);
  }
  int seen = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++seen;
    for (const auto& e : d.edges) {
      if (e.tail == v && --indeg[e.head] == 0) stack.push_back(e.head);
    }
  }
  return seen == n;
}

inline bool is_connected(const FloorDiagram& d) {
  const int n = static_cast<int>(d.vertices.size());
  if (n == 0) return false;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n;
  for (const auto& e : d.edges) {
    int a = find(e.tail), b = find(e.head);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

}  // namespace detail

/// Options for partially specified diagrams: shapes leave degrees and/or
/// weights unassigned and skip the checks that depend on them.
struct ValidationOptions {
  bool require_degrees = true;
  bool require_weights = true;
};

inline ValidationReport validate(const FloorDiagram& d, SurfaceKind s, ValidationOptions opt = {}) {
  ValidationReport r;
  const int n = static_cast<int>(d.vertices.size());
  auto vname = [](int v) { return "vertex " + std::to_string(v); };
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    const auto& e = d.edges[i];
    if (e.tail < 0 || e.tail >= n || e.head < 0 || e.head >= n) {
      r.structural.push_back({"structure", "edge " + std::to_string(i), "references an unknown vertex"});
    } else if (e.tail == e.head) {
      r.structural.push_back({"structure", "edge " + std::to_string(i), "is a loop"});
    }
  }
  for (std::size_t i = 0; i < d.ends.size(); ++i) {
    if (d.ends[i].source < 0 || d.ends[i].source >= n) {
      r.structural.push_back({"structure", "end " + std::to_string(i), "references an unknown vertex"});
    }
  }
  if (n == 0) r.structural.push_back({"structure", "diagram", "has no vertices"});
  if (!r.structural.empty()) return r;

  if (opt.require_weights) {
    for (std::size_t i = 0; i < d.edges.size(); ++i) {
      if (d.edges[i].weight <= 0) r.violations.push_back({"weight", "edge " + std::to_string(i), "weight must be positive"});
    }
    for (std::size_t i = 0; i < d.ends.size(); ++i) {
      if (d.ends[i].weight <= 0) r.violations.push_back({"weight", "end " + std::to_string(i), "weight must be positive"});
    }
  }
  if (d.ends.empty()) r.violations.push_back({"ends", "diagram", "has no ends (b = 0)"});

  for (int v = 0; v < n; ++v) {
    const auto& vx = d.vertices[v];
    switch (vx.kind) {
      case VertexKind::Ground: {
        if (d.in_degree(v) > 0) r.violations.push_back({"A", vname(v), "ground floor has incoming edges"});
        if (d.out_degree(v) == 0) r.violations.push_back({"A", vname(v), "ground floor has no adjacent elevator"});
        if (opt.require_degrees && vx.degree < HalfInt::from_doubled(1)) {
          r.violations.push_back({"degree", vname(v), "ground floor degree must be at least 1/2"});
        }
        if (opt.require_degrees && opt.require_weights) {
          std::int64_t lhs = d.out_weight(v) % 2;
          std::int64_t rhs = (delta(s) * vx.degree.doubled()) % 2;
          if (lhs != rhs) {
            r.violations.push_back({"A", vname(v), "outgoing weight " + std::to_string(d.out_weight(v)) +
                                                       " violates the parity 2*delta*a_G mod 2"});
          }
        }
        break;
      }
      case VertexKind::Etage: {
        if (d.in_degree(v) == 0) r.violations.push_back({"B", vname(v), "etage has no incoming edge"});
        if (opt.require_weights && d.in_weight(v) != d.out_weight(v)) {
          r.violations.push_back({"B", vname(v), "incoming weight " + std::to_string(d.in_weight(v)) +
                                                     " differs from outgoing weight " +
                                                     std::to_string(d.out_weight(v))});
        }
        if (opt.require_degrees && (!vx.degree.is_integer() || vx.degree < HalfInt::from_integer(1))) {
          r.violations.push_back({"degree", vname(v), "etage degree must be a positive integer"});
        }
        break;
      }
      case VertexKind::Joint: {
        if (d.in_degree(v) > 0) r.violations.push_back({"C", vname(v), "joint has incoming edges"});
        if (d.out_degree(v) != 2) {
          r.violations.push_back({"C", vname(v), "joint must have exactly two outgoing edges"});
        } else if (opt.require_weights) {
          auto w = d.adjacent_weights(v);
          if (w[0] != w[1]) r.violations.push_back({"C", vname(v), "joint edges have different weights"});
        }
        if (vx.degree != HalfInt()) r.violations.push_back({"degree", vname(v), "joints carry no degree"});
        break;
      }
    }
  }
  if (!detail::is_acyclic(d)) r.violations.push_back({"acyclic", "diagram", "oriented graph has a directed cycle"});
  if (!detail::is_connected(d)) r.violations.push_back({"connected", "diagram", "underlying graph is disconnected"});
  return r;
}

/// b₁ + number of floors.
inline int genus(const FloorDiagram& d) {
  int b1 = static_cast<int>(d.edges.size()) - static_cast<int>(d.vertices.size()) + 1;
  return b1 + d.floor_count();
}

inline HomologyClass homology_class(const FloorDiagram& d) {
  HomologyClass c;
  std::int64_t ends = 0;
  for (const auto& e : d.ends) ends += e.weight;
  c.b = HalfInt::from_doubled(ends);
  for (const auto& v : d.vertices) {
    if (v.is_floor()) c.a += v.degree;
  }
  return c;
}

inline Partition tangency_profile(const FloorDiagram& d) {
  std::vector<int> w;
  for (const auto& e : d.ends) w.push_back(e.weight);
  return Partition(std::move(w));
}

}  // namespace tmoebius
