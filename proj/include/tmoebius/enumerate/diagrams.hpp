#pragma once

#include "tmoebius/diagram/canonical.hpp"
#include "tmoebius/diagram/floor_diagram.hpp"
#include "tmoebius/parallel.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tmoebius {

struct TopologyBounds {
  int genus = 1;
  int ends = 1;
  int max_joints = 0;
  int max_floors = 1;
};

/// Unweighted, degree-free diagrams (ends attached but without weights) of
/// the given genus and number of ends, up to isomorphism, sorted by code.
inline std::vector<FloorDiagram> enumerate_topologies(const TopologyBounds& tb) {
  std::map<std::vector<std::int64_t>, FloorDiagram> found;
  const int L = tb.ends;
  for (int f = 1; f <= std::min(tb.genus, tb.max_floors); ++f) {
    for (int nG = 0; nG <= f; ++nG) {
      const int nE = f - nG;
      for (int nJ = 0; nJ <= tb.max_joints; ++nJ) {
        const int V = f + nJ;
        const int m = tb.genus - f + V - 1;
        if (nE == 0 && m > 0) continue;
        // Vertex layout: grounds, then étages, then joints.
        std::vector<VertexKind> kinds;
        for (int i = 0; i < nG; ++i) kinds.push_back(VertexKind::Ground);
        for (int i = 0; i < nE; ++i) kinds.push_back(VertexKind::Etage);
        for (int i = 0; i < nJ; ++i) kinds.push_back(VertexKind::Joint);
        std::vector<std::pair<int, int>> pairs;
        for (int h = nG; h < nG + nE; ++h) {
          for (int t = 0; t < V; ++t) {
            if (t != h) pairs.emplace_back(t, h);
          }
        }
        std::vector<int> chosen;
        std::vector<int> out_edges(V, 0), in_edges(V, 0);
        std::function<void(std::size_t)> pick = [&](std::size_t start) {
          if (static_cast<int>(chosen.size()) == m) {
            for (int v = nG; v < nG + nE; ++v) {
              if (in_edges[v] == 0) return;
            }
            FloorDiagram base;
            for (auto k : kinds) base.add_vertex(k);
            for (int p : chosen) base.add_edge(pairs[p].first, pairs[p].second);
            if (!detail::is_acyclic(base) || !detail::is_connected(base)) return;
            // Joints need exactly two outgoing elevators; floors need at least one.
            std::vector<int> need(V, 0);
            int fixed_ends = 0;
            for (int v = nG + nE; v < V; ++v) {
              need[v] = 2 - out_edges[v];
              fixed_ends += need[v];
            }
            int rest = L - fixed_ends;
            if (rest < 0) return;
            std::vector<int> counts(V, 0);
            for (int v = nG + nE; v < V; ++v) counts[v] = need[v];
            std::function<void(int, int)> spread = [&](int v, int left) {
              if (v == f) {
                if (left != 0) return;
                FloorDiagram d = base;
                for (int u = 0; u < V; ++u) {
                  for (int k = 0; k < counts[u]; ++k) d.add_end(u);
                }
                auto cf = canonicalize(d);
                found.emplace(cf.code, cf.diagram);
                return;
              }
              int lo = out_edges[v] == 0 ? 1 : 0;
              for (int c = lo; c <= left; ++c) {
                counts[v] = c;
                spread(v + 1, left - c);
              }
              counts[v] = 0;
            };
            spread(0, rest);
            return;
          }
          for (std::size_t p = start; p < pairs.size(); ++p) {
            auto [t, h] = pairs[p];
            if (kinds[t] == VertexKind::Joint && out_edges[t] >= 2) continue;
            chosen.push_back(static_cast<int>(p));
            ++out_edges[t];
            ++in_edges[h];
            pick(p);
            --out_edges[t];
            --in_edges[h];
            chosen.pop_back();
          }
        };
        pick(0);
      }
    }
  }
  std::vector<FloorDiagram> out;
  for (auto& [code, d] : found) out.push_back(std::move(d));
  return out;
}

/// All weightings of a topology's elevators with end weights taken from
/// `profile`, satisfying conditions (B), (C) and, on δ = 0, the even ground
/// outflow of (A). Not deduplicated.
inline std::vector<FloorDiagram> weight_topology(const FloorDiagram& topo, SurfaceKind s, const Partition& profile) {
  std::vector<FloorDiagram> out;
  if (static_cast<int>(topo.ends.size()) != profile.length()) return out;
  const int max_w = profile.norm();
  const int V = static_cast<int>(topo.vertices.size());
  const int m = static_cast<int>(topo.edges.size());
  // Vertices become checkable once their last incident edge is assigned.
  std::vector<int> last(V, -1);
  for (int e = 0; e < m; ++e) {
    last[topo.edges[e].tail] = std::max(last[topo.edges[e].tail], e);
    last[topo.edges[e].head] = std::max(last[topo.edges[e].head], e);
  }
  std::vector<std::vector<int>> check_at(m + 1);
  for (int v = 0; v < V; ++v) check_at[last[v] + 1].push_back(v);

  auto vertex_ok = [&](const FloorDiagram& d, int v) {
    switch (d.vertices[v].kind) {
      case VertexKind::Etage: return d.in_weight(v) == d.out_weight(v);
      case VertexKind::Joint: {
        auto w = d.adjacent_weights(v);
        return w.size() == 2 && w[0] == w[1];
      }
      case VertexKind::Ground: return delta(s) == 1 || d.out_weight(v) % 2 == 0;
    }
    return false;
  };

  std::vector<int> parts = profile.parts();
  std::sort(parts.begin(), parts.end());
  do {
    FloorDiagram d = topo;
    for (std::size_t i = 0; i < parts.size(); ++i) d.ends[i].weight = parts[i];
    for (auto& e : d.edges) e.weight = 0;
    bool ok = true;
    for (int v : check_at[0]) ok = ok && vertex_ok(d, v);
    if (!ok) continue;
    std::function<void(int)> assign = [&](int e) {
      if (e == m) {
        out.push_back(d);
        return;
      }
      for (int w = 1; w <= max_w; ++w) {
        d.edges[e].weight = w;
        bool good = true;
        for (int v : check_at[e + 1]) good = good && vertex_ok(d, v);
        if (good) assign(e + 1);
      }
      d.edges[e].weight = 0;
    };
    assign(0);
  } while (std::next_permutation(parts.begin(), parts.end()));
  return out;
}

inline void check_profile(SurfaceKind s, int g, HalfInt b, const Partition& profile) {
  if (g < 1) throw std::invalid_argument("genus must be at least 1");
  if (profile.norm() != b.doubled()) {
    throw std::invalid_argument("sum of profile parts " + std::to_string(profile.norm()) + " differs from 2b = " +
                                std::to_string(b.doubled()));
  }
  if (profile.empty()) throw std::invalid_argument("profile must be nonempty (b > 0)");
  (void)s;
}

/// Weighted diagrams with unassigned floor degrees, up to isomorphism.
inline std::vector<FloorDiagram> enumerate_shapes(SurfaceKind s, int g, HalfInt b, const Partition& profile,
                                                  int jobs = 1) {
  check_profile(s, g, b, profile);
  TopologyBounds tb;
  tb.genus = g;
  tb.ends = profile.length();
  tb.max_joints = static_cast<int>(b.doubled() / 2);
  tb.max_floors = g;
  auto topologies = enumerate_topologies(tb);
  auto per_topology = parallel_map(topologies, jobs, [&](const FloorDiagram& t) {
    std::map<std::vector<std::int64_t>, FloorDiagram> local;
    for (const auto& d : weight_topology(t, s, profile)) {
      auto cf = canonicalize(d);
      local.emplace(cf.code, cf.diagram);
    }
    return local;
  });
  std::map<std::vector<std::int64_t>, FloorDiagram> merged;
  for (auto& local : per_topology) merged.insert(local.begin(), local.end());
  std::vector<FloorDiagram> out;
  for (auto& [code, d] : merged) out.push_back(std::move(d));
  return out;
}

/// Every assignment of floor degrees summing to a (labeled by floor). Étages get
/// positive integers, ground floors positive half-integers; when the shape
/// carries weights, ground parity (A) is enforced.
inline std::vector<FloorDiagram> assign_degrees(const FloorDiagram& shape, SurfaceKind s, HalfInt a) {
  std::vector<FloorDiagram> out;
  std::vector<int> floors;
  for (int v = 0; v < static_cast<int>(shape.vertices.size()); ++v) {
    if (shape.vertices[v].is_floor()) floors.push_back(v);
  }
  const bool weighted = std::all_of(shape.edges.begin(), shape.edges.end(), [](const Edge& e) { return e.weight > 0; }) &&
                        std::all_of(shape.ends.begin(), shape.ends.end(), [](const End& e) { return e.weight > 0; });
  FloorDiagram d = shape;
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
    if (i == floors.size()) {
      if (left == 0) out.push_back(d);
      return;
    }
    int v = floors[i];
    bool ground = d.vertices[v].kind == VertexKind::Ground;
    // Doubled degrees: étages even ≥ 2, ground floors ≥ 1.
    for (std::int64_t dd = ground ? 1 : 2; dd <= left; dd += ground ? 1 : 2) {
      if (ground && weighted && (d.out_weight(v) % 2) != (delta(s) * dd) % 2) continue;
      d.vertices[v].degree = HalfInt::from_doubled(dd);
      rec(i + 1, left - dd);
    }
    d.vertices[v].degree = HalfInt();
  };
  rec(0, a.doubled());
  return out;
}

struct DiagramQuery {
  SurfaceKind surface = SurfaceKind::M0;
  int genus = 1;
  HomologyClass cls;
  Partition profile;
};

/// All floor diagrams of the given genus, class and tangency profile up to
/// isomorphism, as canonical representatives sorted by canonical code.
inline std::vector<FloorDiagram> enumerate_diagrams(const DiagramQuery& q, int jobs = 1) {
  check_profile(q.surface, q.genus, q.cls.b, q.profile);
  if (!q.cls.valid_for(q.surface)) {
    throw std::invalid_argument("class " + q.cls.to_string() + " violates 2b = 2*delta*a mod 2 on " +
                                surface_name(q.surface));
  }
  auto shapes = enumerate_shapes(q.surface, q.genus, q.cls.b, q.profile, jobs);
  auto per_shape = parallel_map(shapes, jobs, [&](const FloorDiagram& shape) {
    std::map<std::vector<std::int64_t>, FloorDiagram> local;
    for (const auto& d : assign_degrees(shape, q.surface, q.cls.a)) {
      auto cf = canonicalize(d);
      local.emplace(cf.code, cf.diagram);
    }
    return local;
  });
  std::map<std::vector<std::int64_t>, FloorDiagram> merged;
  for (auto& local : per_shape) merged.insert(local.begin(), local.end());
  std::vector<FloorDiagram> out;
  for (auto& [code, d] : merged) out.push_back(std::move(d));
  return out;
}

}  // namespace tmoebius
