#pragma once

#include "tmoebius/diagram/floor_diagram.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

namespace tmoebius {

/// Canonical relabeling of a diagram. `code` identifies the isomorphism class;
/// `diagram` is the relabeled representative with sorted edges and ends.
struct CanonicalForm {
  std::vector<std::int64_t> code;
  FloorDiagram diagram;
  Integer aut_order = 1;
};

namespace detail {

using Colors = std::vector<int>;

inline Colors ranked(const std::vector<std::vector<std::int64_t>>& sigs) {
  std::vector<std::vector<std::int64_t>> uniq = sigs;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  Colors c(sigs.size());
  for (std::size_t i = 0; i < sigs.size(); ++i) {
    c[i] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), sigs[i]) - uniq.begin());
  }
  return c;
}

inline int color_count(const Colors& c) {
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

inline Colors initial_colors(const FloorDiagram& d) {
  const int n = static_cast<int>(d.vertices.size());
  std::vector<std::vector<std::int64_t>> sigs(n);
  for (int v = 0; v < n; ++v) {
    sigs[v] = {static_cast<std::int64_t>(d.vertices[v].kind), d.vertices[v].degree.doubled()};
    std::vector<std::int64_t> w;
    for (const auto& e : d.ends) {
      if (e.source == v) w.push_back(e.weight);
    }
    std::sort(w.begin(), w.end());
    sigs[v].push_back(static_cast<std::int64_t>(w.size()));
    sigs[v].insert(sigs[v].end(), w.begin(), w.end());
  }
  return ranked(sigs);
}

/// Color refinement; new colors are ranks of (old color, neighbourhood) signatures.
inline Colors refine(const FloorDiagram& d, Colors c) {
  const int n = static_cast<int>(d.vertices.size());
  while (true) {
    std::vector<std::vector<std::int64_t>> sigs(n);
    for (int v = 0; v < n; ++v) {
      std::vector<std::pair<std::int64_t, std::int64_t>> out, in;
      for (const auto& e : d.edges) {
        if (e.tail == v) out.emplace_back(c[e.head], e.weight);
        if (e.head == v) in.emplace_back(c[e.tail], e.weight);
      }
      std::sort(out.begin(), out.end());
      std::sort(in.begin(), in.end());
      auto& s = sigs[v];
      s.push_back(c[v]);
      s.push_back(static_cast<std::int64_t>(out.size()));
      for (auto [col, w] : out) {
        s.push_back(col);
        s.push_back(w);
      }
      s.push_back(static_cast<std::int64_t>(in.size()));
      for (auto [col, w] : in) {
        s.push_back(col);
        s.push_back(w);
      }
    }
    Colors next = ranked(sigs);
    if (color_count(next) == color_count(c)) return next;
    c = std::move(next);
  }
}

/// Code of the diagram with vertex v placed at position pos[v].
inline std::vector<std::int64_t> encode(const FloorDiagram& d, const std::vector<int>& pos) {
  const int n = static_cast<int>(d.vertices.size());
  std::vector<int> at(n);
  for (int v = 0; v < n; ++v) at[pos[v]] = v;
  std::vector<std::int64_t> code{n, static_cast<std::int64_t>(d.edges.size()),
                                 static_cast<std::int64_t>(d.ends.size())};
  for (int i = 0; i < n; ++i) {
    const auto& vx = d.vertices[at[i]];
    code.push_back(static_cast<std::int64_t>(vx.kind));
    code.push_back(vx.degree.doubled());
  }
  std::vector<std::tuple<int, int, int>> edges;
  for (const auto& e : d.edges) edges.emplace_back(pos[e.tail], pos[e.head], e.weight);
  std::sort(edges.begin(), edges.end());
  for (auto [t, h, w] : edges) {
    code.push_back(t);
    code.push_back(h);
    code.push_back(w);
  }
  std::vector<std::pair<int, int>> ends;
  for (const auto& e : d.ends) ends.emplace_back(pos[e.source], e.weight);
  std::sort(ends.begin(), ends.end());
  for (auto [s, w] : ends) {
    code.push_back(s);
    code.push_back(w);
  }
  return code;
}

struct SearchState {
  std::vector<std::int64_t> best;
  std::vector<int> best_pos;
  std::int64_t best_count = 0;
};

inline void search(const FloorDiagram& d, const Colors& colors, SearchState& st) {
  Colors c = refine(d, colors);
  const int n = static_cast<int>(c.size());
  const int k = color_count(c);
  if (k == n) {
    auto code = encode(d, c);
    if (st.best_count == 0 || code < st.best) {
      st.best = std::move(code);
      st.best_pos = c;
      st.best_count = 1;
    } else if (code == st.best) {
      ++st.best_count;
    }
    return;
  }
  std::vector<int> size(k, 0);
  for (int x : c) ++size[x];
  int target = 0;
  while (size[target] == 1) ++target;
  for (int v = 0; v < n; ++v) {
    if (c[v] != target) continue;
    Colors next(n);
    for (int u = 0; u < n; ++u) next[u] = 2 * c[u] + ((c[u] == target && u != v) ? 1 : 0);
    search(d, next, st);
  }
}

}  // namespace detail

inline CanonicalForm canonicalize(const FloorDiagram& d) {
  detail::SearchState st;
  if (!d.vertices.empty()) detail::search(d, detail::initial_colors(d), st);
  CanonicalForm cf;
  cf.code = st.best.empty() ? detail::encode(d, {}) : st.best;
  const auto& pos = st.best_pos;
  const int n = static_cast<int>(d.vertices.size());
  cf.diagram.vertices.resize(n);
  for (int v = 0; v < n; ++v) cf.diagram.vertices[pos[v]] = d.vertices[v];
  for (const auto& e : d.edges) cf.diagram.edges.push_back({pos[e.tail], pos[e.head], e.weight});
  for (const auto& e : d.ends) cf.diagram.ends.push_back({pos[e.source], e.weight});
  auto edge_key = [](const Edge& e) { return std::tuple(e.tail, e.head, e.weight); };
  auto end_key = [](const End& e) { return std::pair(e.source, e.weight); };
  std::sort(cf.diagram.edges.begin(), cf.diagram.edges.end(),
            [&](const Edge& x, const Edge& y) { return edge_key(x) < edge_key(y); });
  std::sort(cf.diagram.ends.begin(), cf.diagram.ends.end(),
            [&](const End& x, const End& y) { return end_key(x) < end_key(y); });

  Integer aut = st.best_count == 0 ? 1 : Integer(st.best_count);
  std::map<std::tuple<int, int, int>, int> parallel;
  for (const auto& e : cf.diagram.edges) ++parallel[edge_key(e)];
  for (const auto& [key, m] : parallel) aut *= factorial(m);
  std::map<std::pair<int, int>, int> same_ends;
  for (const auto& e : cf.diagram.ends) ++same_ends[end_key(e)];
  for (const auto& [key, m] : same_ends) aut *= factorial(m);
  cf.aut_order = aut;
  return cf;
}

inline std::vector<std::int64_t> canonical_form(const FloorDiagram& d) { return canonicalize(d).code; }
inline Integer aut_order(const FloorDiagram& d) { return canonicalize(d).aut_order; }

inline bool isomorphic(const FloorDiagram& x, const FloorDiagram& y) {
  return canonical_form(x) == canonical_form(y);
}

}  // namespace tmoebius
