#pragma once

#include "tmoebius/diagram/floor_diagram.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace tmoebius {

enum class CellKind { Vertex, Edge, End };

struct Cell {
  CellKind kind = CellKind::Vertex;
  int index = 0;
  bool operator==(const Cell&) const = default;
};

inline std::string to_string(const Cell& c) {
  switch (c.kind) {
    case CellKind::Vertex: return "vertex " + std::to_string(c.index);
    case CellKind::Edge: return "edge " + std::to_string(c.index);
    case CellKind::End: return "end " + std::to_string(c.index);
  }
  return "?";
}

/// Flat numbering of cells: vertices, then bounded edges, then ends.
struct CellIndex {
  int vertices = 0, edges = 0, ends = 0;

  explicit CellIndex(const FloorDiagram& d)
      : vertices(static_cast<int>(d.vertices.size())),
        edges(static_cast<int>(d.edges.size())),
        ends(static_cast<int>(d.ends.size())) {}

  int total() const { return vertices + edges + ends; }
  int of(const Cell& c) const {
    switch (c.kind) {
      case CellKind::Vertex: return c.index;
      case CellKind::Edge: return vertices + c.index;
      case CellKind::End: return vertices + edges + c.index;
    }
    return -1;
  }
  Cell at(int flat) const {
    if (flat < vertices) return {CellKind::Vertex, flat};
    if (flat < vertices + edges) return {CellKind::Edge, flat - vertices};
    return {CellKind::End, flat - vertices - edges};
  }
};

/// For every cell, the bitmask of cells strictly above it in the order ≺
/// generated by tail ≺ edge ≺ head and source ≺ end.
inline std::vector<std::uint64_t> strict_successors(const FloorDiagram& d) {
  CellIndex ix(d);
  if (ix.total() > 64) throw std::length_error("diagram too large for the marking search (more than 64 cells)");
  std::vector<std::uint64_t> succ(ix.total(), 0);
  std::vector<int> done(ix.vertices, 0);
  std::function<std::uint64_t(int)> of_vertex = [&](int v) -> std::uint64_t {
    if (done[v] == 2) return succ[v];
    if (done[v] == 1) throw std::invalid_argument("diagram has a directed cycle");
    done[v] = 1;
    std::uint64_t m = 0;
    for (int e = 0; e < ix.edges; ++e) {
      if (d.edges[e].tail != v) continue;
      int h = d.edges[e].head;
      std::uint64_t above_edge = (std::uint64_t{1} << h) | of_vertex(h);
      succ[ix.vertices + e] = above_edge;
      m |= (std::uint64_t{1} << (ix.vertices + e)) | above_edge;
    }
    for (int e = 0; e < ix.ends; ++e) {
      if (d.ends[e].source == v) m |= std::uint64_t{1} << (ix.vertices + ix.edges + e);
    }
    done[v] = 2;
    return succ[v] = m;
  };
  for (int v = 0; v < ix.vertices; ++v) of_vertex(v);
  return succ;
}

enum class ComponentType { GroundFloorComponent, FreeEndComponent, OddJointCycleComponent, Invalid };

inline const char* component_type_name(ComponentType t) {
  switch (t) {
    case ComponentType::GroundFloorComponent: return "ground-floor";
    case ComponentType::FreeEndComponent: return "free-end";
    case ComponentType::OddJointCycleComponent: return "odd-joint-cycle";
    case ComponentType::Invalid: return "invalid";
  }
  return "?";
}

struct Component {
  ComponentType type = ComponentType::Invalid;
  std::string reason;  // set for Invalid
  std::vector<int> vertices;
};

struct ComponentReport {
  std::vector<Component> components;
  int cycles = 0;  // N(D): components of odd-joint-cycle type

  bool valid() const {
    return std::none_of(components.begin(), components.end(),
                        [](const Component& c) { return c.type == ComponentType::Invalid; });
  }
};

/// Splits the diagram at every marked elevator and classifies the pieces that
/// contain vertices. Unmarked ends are the free ends of condition (c)(ii).
inline ComponentReport classify_components(const FloorDiagram& d, const std::vector<bool>& edge_marked,
                                           const std::vector<bool>& end_marked) {
  const int n = static_cast<int>(d.vertices.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    if (!edge_marked[e]) parent[find(d.edges[e].tail)] = find(d.edges[e].head);
  }
  std::map<int, int> slot;
  ComponentReport rep;
  for (int v = 0; v < n; ++v) {
    auto [it, fresh] = slot.emplace(find(v), static_cast<int>(rep.components.size()));
    if (fresh) rep.components.emplace_back();
    rep.components[it->second].vertices.push_back(v);
  }
  for (auto& comp : rep.components) {
    int root = find(comp.vertices.front());
    int grounds = 0, free_ends = 0, inner_edges = 0;
    for (int v : comp.vertices) grounds += d.vertices[v].kind == VertexKind::Ground ? 1 : 0;
    for (std::size_t e = 0; e < d.ends.size(); ++e) {
      if (!end_marked[e] && find(d.ends[e].source) == root) ++free_ends;
    }
    std::vector<int> inner;
    for (std::size_t e = 0; e < d.edges.size(); ++e) {
      if (!edge_marked[e] && find(d.edges[e].tail) == root) inner.push_back(static_cast<int>(e));
    }
    inner_edges = static_cast<int>(inner.size());
    int cyclomatic = inner_edges - static_cast<int>(comp.vertices.size()) + 1;
    auto invalid = [&](std::string why) {
      comp.type = ComponentType::Invalid;
      comp.reason = std::move(why);
    };
    if (grounds >= 2) {
      invalid("contains " + std::to_string(grounds) + " ground floors");
    } else if (grounds == 1) {
      if (cyclomatic != 0) {
        invalid("ground-floor component contains a cycle");
      } else if (free_ends != 0) {
        invalid("ground-floor component contains a free end");
      } else {
        comp.type = ComponentType::GroundFloorComponent;
      }
    } else if (cyclomatic == 0) {
      if (free_ends == 1) {
        comp.type = ComponentType::FreeEndComponent;
      } else {
        invalid("tree component with " + std::to_string(free_ends) + " free ends");
      }
    } else if (cyclomatic == 1) {
      if (free_ends != 0) {
        invalid("cycle component contains a free end");
      } else {
        // Prune leaves to expose the cycle, then count its joints.
        std::map<int, int> deg;
        for (int v : comp.vertices) deg[v] = 0;
        for (int e : inner) {
          ++deg[d.edges[e].tail];
          ++deg[d.edges[e].head];
        }
        std::vector<bool> removed(d.edges.size(), false);
        bool changed = true;
        while (changed) {
          changed = false;
          for (int e : inner) {
            if (removed[e]) continue;
            int t = d.edges[e].tail, h = d.edges[e].head;
            if (deg[t] == 1 || deg[h] == 1) {
              removed[e] = true;
              --deg[t];
              --deg[h];
              changed = true;
            }
          }
        }
        int joints = 0;
        for (int v : comp.vertices) {
          if (deg[v] >= 2 && d.vertices[v].kind == VertexKind::Joint) ++joints;
        }
        if (joints % 2 == 1) {
          comp.type = ComponentType::OddJointCycleComponent;
          ++rep.cycles;
        } else {
          invalid("cycle passes through an even number (" + std::to_string(joints) + ") of joints");
        }
      }
    } else {
      invalid("component has " + std::to_string(cyclomatic) + " independent cycles");
    }
  }
  return rep;
}

/// Overload taking marked cells; étage cells are ignored.
inline ComponentReport classify_components(const FloorDiagram& d, const std::vector<Cell>& marked) {
  std::vector<bool> em(d.edges.size(), false), nm(d.ends.size(), false);
  for (const auto& c : marked) {
    if (c.kind == CellKind::Edge) em.at(c.index) = true;
    if (c.kind == CellKind::End) nm.at(c.index) = true;
  }
  return classify_components(d, em, nm);
}

/// Number of linear extensions of the order induced on `cells` (flat indices).
inline Integer count_linear_extensions(const std::vector<int>& cells, const std::vector<std::uint64_t>& succ) {
  const int k = static_cast<int>(cells.size());
  if (k > 24) throw std::length_error("too many marked cells for linear extension counting");
  std::vector<std::uint32_t> below(k, 0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i != j && (succ[cells[j]] >> cells[i] & 1)) below[i] |= 1u << j;
    }
  }
  std::vector<Integer> dp(std::size_t{1} << k, Integer(0));
  dp[0] = 1;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    if (dp[mask] == 0) continue;
    for (int i = 0; i < k; ++i) {
      if (!(mask >> i & 1) && (below[i] & ~mask) == 0) dp[mask | (1u << i)] += dp[mask];
    }
  }
  return dp[(std::size_t{1} << k) - 1];
}

/// A choice of fixed ends and marked elevators satisfying conditions (a)-(c).
/// It stands for fixed_assignments × orderings labeled markings.
struct MarkingPattern {
  std::vector<bool> edge_marked;
  std::vector<bool> end_marked;
  std::vector<bool> end_fixed;
  Integer fixed_assignments = 1;  // ∏ μ_i!: labelled fixed coordinates onto the fixed ends
  Integer orderings = 1;          // linear extensions of étages and marked free cells
  int cycles = 0;                 // N(D)

  Integer marking_count() const { return fixed_assignments * orderings; }
};

/// Number of point conditions |ν| + g − 1; fixed ends take the labels above them.
inline int point_count(const Partition& free, int genus) { return free.length() + genus - 1; }

/// Patterns for an explicit set of fixed ends (bit e of fixed_mask); every
/// pattern places `point_marks` labels on étages and non-fixed elevators.
/// fixed_assignments is left at 1.
inline std::vector<MarkingPattern> marking_patterns_for(const FloorDiagram& d, std::uint32_t fixed_mask,
                                                        int point_marks) {
  const int E = static_cast<int>(d.edges.size());
  const int L = static_cast<int>(d.ends.size());
  std::vector<MarkingPattern> out;
  if (E + L > 30) throw std::length_error("too many elevators for marking enumeration");
  CellIndex ix(d);
  auto succ = strict_successors(d);
  std::vector<int> etage_cells;
  for (int v = 0; v < ix.vertices; ++v) {
    if (d.vertices[v].kind == VertexKind::Etage) etage_cells.push_back(v);
  }
  const int free_marks = point_marks - static_cast<int>(etage_cells.size());
  if (free_marks < 0) return out;
  std::vector<int> candidates;
  for (int e = 0; e < E; ++e) candidates.push_back(ix.vertices + e);
  for (int e = 0; e < L; ++e) {
    if (!(fixed_mask >> e & 1)) candidates.push_back(ix.vertices + E + e);
  }
  const int c = static_cast<int>(candidates.size());
  if (free_marks > c) return out;
  for (std::uint32_t s = 0; s < (1u << c); ++s) {
    if (std::popcount(s) != free_marks) continue;
    MarkingPattern p;
    p.edge_marked.assign(E, false);
    p.end_marked.assign(L, false);
    p.end_fixed.assign(L, false);
    for (int e = 0; e < L; ++e) {
      if (fixed_mask >> e & 1) p.end_marked[e] = p.end_fixed[e] = true;
    }
    std::vector<int> cells = etage_cells;
    for (int i = 0; i < c; ++i) {
      if (!(s >> i & 1)) continue;
      Cell cell = ix.at(candidates[i]);
      if (cell.kind == CellKind::Edge) p.edge_marked[cell.index] = true;
      else p.end_marked[cell.index] = true;
      cells.push_back(candidates[i]);
    }
    auto rep = classify_components(d, p.edge_marked, p.end_marked);
    if (!rep.valid()) continue;
    p.cycles = rep.cycles;
    p.orderings = count_linear_extensions(cells, succ);
    if (p.orderings == 0) continue;
    out.push_back(std::move(p));
  }
  return out;
}

/// All patterns for the relative problem (μ fixed, ν free): every choice of
/// ends whose weights form μ, each standing for ∏ μ_i! labelled assignments.
inline std::vector<MarkingPattern> marking_patterns(const FloorDiagram& d, const Partition& fixed,
                                                    const Partition& free) {
  if (fixed + free != tangency_profile(d)) {
    throw std::invalid_argument("fixed + free parts must equal the tangency profile " +
                                tangency_profile(d).to_string());
  }
  const int L = static_cast<int>(d.ends.size());
  const int points = point_count(free, genus(d));
  const Integer fixed_factor = fixed.symmetry_order();
  std::vector<MarkingPattern> out;
  for (std::uint32_t phi = 0; phi < (1u << L); ++phi) {
    std::vector<int> chosen;
    for (int e = 0; e < L; ++e) {
      if (phi >> e & 1) chosen.push_back(d.ends[e].weight);
    }
    if (Partition(chosen) != fixed) continue;
    for (auto& p : marking_patterns_for(d, phi, points)) {
      p.fixed_assignments = fixed_factor;
      out.push_back(std::move(p));
    }
  }
  return out;
}

/// Explicit marking: placements[i] is the cell carrying label i+1. Labels
/// 1..|ν|+g−1 are point conditions; the remaining labels sit on fixed ends,
/// the j-th of them on the end matched to the j-th part of μ (parts decreasing).
struct Marking {
  std::vector<Cell> placements;
  int point_labels = 0;
};

inline std::vector<Marking> enumerate_markings(const FloorDiagram& d, const Partition& fixed, const Partition& free) {
  std::vector<Marking> out;
  auto patterns = marking_patterns(d, fixed, free);
  CellIndex ix(d);
  auto succ = strict_successors(d);
  const int pts = point_count(free, genus(d));
  for (const auto& p : patterns) {
    std::vector<int> cells;
    for (int v = 0; v < ix.vertices; ++v) {
      if (d.vertices[v].kind == VertexKind::Etage) cells.push_back(v);
    }
    std::vector<int> fixed_ends;
    for (int e = 0; e < ix.edges; ++e) {
      if (p.edge_marked[e]) cells.push_back(ix.vertices + e);
    }
    for (int e = 0; e < ix.ends; ++e) {
      if (p.end_fixed[e]) fixed_ends.push_back(e);
      else if (p.end_marked[e]) cells.push_back(ix.vertices + ix.edges + e);
    }
    // All matchings of the ordered μ parts onto the fixed ends.
    std::vector<std::vector<int>> assignments;
    std::vector<int> perm = fixed_ends;
    std::sort(perm.begin(), perm.end());
    do {
      bool ok = true;
      for (std::size_t j = 0; j < perm.size(); ++j) ok = ok && d.ends[perm[j]].weight == fixed.parts()[j];
      if (ok) assignments.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    // All linear extensions of the point cells.
    std::vector<int> order;
    std::vector<bool> used(cells.size(), false);
    std::function<void()> extend = [&]() {
      if (order.size() == cells.size()) {
        for (const auto& a : assignments) {
          Marking m;
          m.point_labels = pts;
          for (int c : order) m.placements.push_back(ix.at(c));
          for (int e : a) m.placements.push_back({CellKind::End, e});
          out.push_back(std::move(m));
        }
        return;
      }
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (used[i]) continue;
        bool minimal = true;
        for (std::size_t j = 0; j < cells.size(); ++j) {
          if (!used[j] && j != i && (succ[cells[j]] >> cells[i] & 1)) minimal = false;
        }
        if (!minimal) continue;
        used[i] = true;
        order.push_back(cells[i]);
        extend();
        order.pop_back();
        used[i] = false;
      }
    };
    extend();
  }
  return out;
}

/// Checks one explicit marking against conditions (a)-(c) and the order.
inline bool is_valid_marking(const FloorDiagram& d, const Marking& m, std::string* why = nullptr) {
  auto fail = [&](std::string r) {
    if (why) *why = std::move(r);
    return false;
  };
  CellIndex ix(d);
  auto succ = strict_successors(d);
  std::vector<int> hits(ix.total(), 0);
  for (const auto& c : m.placements) {
    if (c.kind == CellKind::Vertex && d.vertices.at(c.index).kind != VertexKind::Etage) {
      return fail("marking on a ground floor or joint");
    }
    if (++hits[ix.of(c)] > 1) return fail("two markings on " + to_string(c));
  }
  if (m.point_labels < 0 || m.point_labels > static_cast<int>(m.placements.size())) {
    return fail("point label count out of range");
  }
  for (std::size_t i = m.point_labels; i < m.placements.size(); ++i) {
    if (m.placements[i].kind != CellKind::End) return fail("fixed label " + std::to_string(i + 1) + " is not on an end");
  }
  for (int v = 0; v < ix.vertices; ++v) {
    if (d.vertices[v].kind == VertexKind::Etage && hits[v] != 1) return fail("etage without marking");
  }
  for (std::size_t i = 0; i < m.placements.size(); ++i) {
    for (std::size_t j = 0; j < m.placements.size(); ++j) {
      if ((succ[ix.of(m.placements[i])] >> ix.of(m.placements[j]) & 1) && j < i) {
        return fail("labels not increasing along the order");
      }
    }
  }
  auto rep = classify_components(d, m.placements);
  if (!rep.valid()) {
    for (const auto& c : rep.components) {
      if (c.type == ComponentType::Invalid) return fail(c.reason);
    }
  }
  return true;
}

/// As above, and the fixed labels sit on ends of weights μ₁ ≥ μ₂ ≥ … in label order.
inline bool is_valid_marking(const FloorDiagram& d, const Marking& m, const Partition& fixed,
                             std::string* why = nullptr) {
  if (!is_valid_marking(d, m, why)) return false;
  const std::size_t k = m.placements.size() - m.point_labels;
  bool ok = k == static_cast<std::size_t>(fixed.length());
  for (std::size_t j = 0; ok && j < k; ++j) {
    ok = d.ends[m.placements[m.point_labels + j].index].weight == fixed.parts()[j];
  }
  if (!ok && why) *why = "fixed labels do not match mu";
  return ok;
}

}  // namespace tmoebius
