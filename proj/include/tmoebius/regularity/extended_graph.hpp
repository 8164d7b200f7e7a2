#pragma once

#include "tmoebius/core/linear_algebra.hpp"
#include "tmoebius/diagram/floor_diagram.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tmoebius {

enum class ColumnKind { BoundedEdge, End, GroundEdge };

/// The diagram with one extra vertex v_e per end and one extra half-edge e_G
/// per ground floor, and the linear system A w = d on elevator weights.
///
/// Rows: diagram vertices, then one v_e per end. Columns: bounded edges,
/// ends, then one e_G per ground floor. Row equations:
///   étage   Σ in − Σ out = 0
///   ground  Σ out − 2 w_{e_G} = ε_G
///   joint   w_{e1} − w_{e2} = 0
///   v_e     w_e = entry of that end
struct ExtendedGraph {
  FloorDiagram base;
  SurfaceKind surface = SurfaceKind::M0;
  IntMatrix A;
  std::vector<ColumnKind> column_kind;
  std::vector<int> column_ref;  // edge, end or vertex index behind each column
  std::vector<std::int64_t> d_template;  // entries at v_e rows are filled by divergence()

  int vertex_rows() const { return static_cast<int>(base.vertices.size()); }
  int rows() const { return static_cast<int>(A.size()); }
  int columns() const { return static_cast<int>(column_kind.size()); }

  /// Lower bound of each unknown: elevators ≥ 1, e_G ≥ 0.
  std::int64_t lower_bound(int col) const { return column_kind[col] == ColumnKind::GroundEdge ? 0 : 1; }

  /// Right-hand side for end weights given in end order.
  std::vector<std::int64_t> divergence(const std::vector<std::int64_t>& end_weights) const {
    if (end_weights.size() != base.ends.size()) throw std::invalid_argument("one entry per end is required");
    std::vector<std::int64_t> d = d_template;
    for (std::size_t e = 0; e < end_weights.size(); ++e) d[vertex_rows() + e] = end_weights[e];
    return d;
  }
};

/// ε_G = 2δ a_G mod 2 is read from the ground floor's degree.
inline ExtendedGraph build_extended(const FloorDiagram& shape, SurfaceKind s) {
  ExtendedGraph g;
  g.base = shape;
  g.surface = s;
  const int V = static_cast<int>(shape.vertices.size());
  const int m = static_cast<int>(shape.edges.size());
  const int L = static_cast<int>(shape.ends.size());
  for (int e = 0; e < m; ++e) {
    g.column_kind.push_back(ColumnKind::BoundedEdge);
    g.column_ref.push_back(e);
  }
  for (int e = 0; e < L; ++e) {
    g.column_kind.push_back(ColumnKind::End);
    g.column_ref.push_back(e);
  }
  for (int v = 0; v < V; ++v) {
    if (shape.vertices[v].kind == VertexKind::Ground) {
      g.column_kind.push_back(ColumnKind::GroundEdge);
      g.column_ref.push_back(v);
    }
  }
  const int cols = g.columns();
  g.A.assign(V + L, std::vector<Integer>(cols, Integer(0)));
  g.d_template.assign(V + L, 0);
  for (int c = 0; c < cols; ++c) {
    const int r = g.column_ref[c];
    switch (g.column_kind[c]) {
      case ColumnKind::BoundedEdge: {
        const auto& e = shape.edges[r];
        const auto tail_kind = shape.vertices[e.tail].kind;
        g.A[e.tail][c] += tail_kind == VertexKind::Etage ? -1 : 1;
        g.A[e.head][c] += 1;
        break;
      }
      case ColumnKind::End: {
        const auto& e = shape.ends[r];
        g.A[e.source][c] += shape.vertices[e.source].kind == VertexKind::Etage ? -1 : 1;
        g.A[V + r][c] = 1;
        break;
      }
      case ColumnKind::GroundEdge: g.A[r][c] = -2; break;
    }
  }
  // A joint's second elevator enters its row with coefficient −1.
  for (int v = 0; v < V; ++v) {
    if (shape.vertices[v].kind != VertexKind::Joint) continue;
    bool first = true;
    for (int c = 0; c < cols; ++c) {
      if (g.A[v][c] == 0) continue;
      if (!first) g.A[v][c] = -g.A[v][c];
      first = false;
    }
  }
  for (int v = 0; v < V; ++v) {
    if (shape.vertices[v].kind == VertexKind::Ground) {
      g.d_template[v] = (delta(s) * shape.vertices[v].degree.doubled()) % 2;
    }
  }
  return g;
}

namespace detail {

/// Integer parametrisation of the solution set: pivot unknowns as affine
/// functions of the free unknowns, all over a common denominator per row.
struct Parametrisation {
  bool consistent = true;
  std::vector<int> free_cols;
  std::vector<int> pivot_cols;
  // pivot value = (rhs[i] − Σ_j coef[i][j] · x_free[j]) / den[i]
  std::vector<Integer> rhs, den;
  std::vector<std::vector<Integer>> coef;
};

inline Parametrisation parametrise(const ExtendedGraph& g, const std::vector<std::int64_t>& d) {
  Parametrisation p;
  const int cols = g.columns();
  RatMatrix aug = to_rational(g.A);
  for (int r = 0; r < g.rows(); ++r) aug[r].push_back(Rational(d[r]));
  auto pivots = row_reduce(aug, cols);
  for (std::size_t r = pivots.size(); r < aug.size(); ++r) {
    if (aug[r][cols] != 0) p.consistent = false;
  }
  if (!p.consistent) return p;
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (int c = 0; c < cols; ++c) {
    if (!is_pivot[c]) p.free_cols.push_back(c);
  }
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    Integer den = 1;
    for (int c = 0; c <= cols; ++c) {
      Integer q = boost::multiprecision::denominator(aug[i][c]);
      den = boost::multiprecision::lcm(den, q);
    }
    p.pivot_cols.push_back(static_cast<int>(pivots[i]));
    p.den.push_back(den);
    p.rhs.push_back(boost::multiprecision::numerator(Rational(aug[i][cols] * den)));
    std::vector<Integer> row;
    for (int f : p.free_cols) row.push_back(boost::multiprecision::numerator(Rational(aug[i][f] * den)));
    p.coef.push_back(row);
  }
  return p;
}

}  // namespace detail

/// For each exponent vector, Σ over integer solutions of A w = d
/// (elevators ≥ 1, e_G ≥ 0) of ∏ w_c^{exponents[c]}. One pass over the solutions.
inline std::vector<Integer> weighting_sums(const ExtendedGraph& g, const std::vector<std::int64_t>& d,
                                           const std::vector<std::vector<int>>& exponents) {
  for (const auto& e : exponents) {
    if (static_cast<int>(e.size()) != g.columns()) throw std::invalid_argument("one exponent per column");
  }
  std::vector<Integer> totals(exponents.size(), Integer(0));
  if (static_cast<int>(d.size()) != g.rows()) throw std::invalid_argument("one divergence entry per row");
  auto p = detail::parametrise(g, d);
  if (!p.consistent) return totals;
  // Every elevator carries at most the total end weight, and e_G at most half of it.
  std::int64_t bound = 0;
  for (int r = g.vertex_rows(); r < g.rows(); ++r) bound += std::max<std::int64_t>(d[r], 0);
  const std::size_t nf = p.free_cols.size(), np = p.pivot_cols.size();
  std::vector<std::int64_t> x(g.columns(), 0);
  std::vector<std::int64_t> rhs(np), den(np);
  std::vector<std::vector<std::int64_t>> coef(np, std::vector<std::int64_t>(nf));
  for (std::size_t i = 0; i < np; ++i) {
    rhs[i] = static_cast<std::int64_t>(p.rhs[i]);
    den[i] = static_cast<std::int64_t>(p.den[i]);
    for (std::size_t j = 0; j < nf; ++j) coef[i][j] = static_cast<std::int64_t>(p.coef[i][j]);
  }
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == nf) {
      for (std::size_t i = 0; i < np; ++i) {
        std::int64_t num = rhs[i];
        for (std::size_t k = 0; k < nf; ++k) num -= coef[i][k] * x[p.free_cols[k]];
        if (num % den[i] != 0) return;
        std::int64_t v = num / den[i];
        if (v < g.lower_bound(p.pivot_cols[i])) return;
        x[p.pivot_cols[i]] = v;
      }
      for (std::size_t t = 0; t < exponents.size(); ++t) {
        Integer term = 1;
        for (int c = 0; c < g.columns(); ++c) {
          for (int k = 0; k < exponents[t][c]; ++k) term *= x[c];
        }
        totals[t] += term;
      }
      return;
    }
    const int c = p.free_cols[j];
    for (std::int64_t v = g.lower_bound(c); v <= bound; ++v) {
      x[c] = v;
      rec(j + 1);
    }
  };
  rec(0);
  return totals;
}

inline Integer count_weightings(const ExtendedGraph& g, const std::vector<std::int64_t>& d,
                                const std::vector<int>& exponents) {
  return weighting_sums(g, d, {exponents}).front();
}

/// Plain number of solutions.
inline Integer count_solutions(const ExtendedGraph& g, const std::vector<std::int64_t>& d) {
  return count_weightings(g, d, std::vector<int>(g.columns(), 0));
}

/// Component of the subgraph G_Δ spanned by a column subset.
struct MinorComponent {
  std::vector<int> rows;
  int edges = 0;
  int ground_edges = 0;
  int joints_on_cycle = 0;
  bool tree_with_ground_edge = false;
  bool unicyclic = false;
};

struct MinorReport {
  std::vector<int> columns;
  Integer det = 0;
  std::vector<MinorComponent> components;
  bool structure_ok = true;             // nonzero det ⇒ every component is an e_G-tree or unicyclic without e_G
  std::vector<Integer> cokernel;        // invariant factors > 1 of A_Δ
  std::vector<Integer> predicted;       // one 2 per e_G-tree and per odd-joint cycle
  bool cokernel_matches = true;
  bool det_in_unit_or_two = true;       // |det| ∈ {1, 2} when det ≠ 0
  bool det_matches_components = true;   // |det| = 2^(#components) when det ≠ 0; det = 0 iff an even-joint cycle or a non-square block
};

namespace detail {

inline std::vector<MinorComponent> minor_components(const ExtendedGraph& g, const std::vector<int>& cols) {
  const int R = g.rows();
  const int V = g.vertex_rows();
  std::vector<int> parent(R);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  struct Link {
    int a, b;  // b = -1 for a half-edge e_G
  };
  std::vector<Link> links;
  for (int c : cols) {
    int r = g.column_ref[c];
    switch (g.column_kind[c]) {
      case ColumnKind::BoundedEdge: links.push_back({g.base.edges[r].tail, g.base.edges[r].head}); break;
      case ColumnKind::End: links.push_back({g.base.ends[r].source, V + r}); break;
      case ColumnKind::GroundEdge: links.push_back({r, -1}); break;
    }
  }
  for (const auto& l : links) {
    if (l.b >= 0) parent[find(l.a)] = find(l.b);
  }
  std::vector<int> slot(R, -1);
  std::vector<MinorComponent> comps;
  for (int r = 0; r < R; ++r) {
    int root = find(r);
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[slot[root]].rows.push_back(r);
  }
  for (const auto& l : links) {
    auto& c = comps[slot[find(l.a)]];
    ++c.edges;
    if (l.b < 0) ++c.ground_edges;
  }
  for (std::size_t i = 0; i < comps.size(); ++i) {
    auto& c = comps[i];
    const int n = static_cast<int>(c.rows.size());
    int full = c.edges - c.ground_edges;
    c.tree_with_ground_edge = c.ground_edges == 1 && full == n - 1;
    c.unicyclic = c.ground_edges == 0 && full == n;
    if (!c.unicyclic) continue;
    // Strip leaves; the joints left over lie on the cycle.
    std::vector<int> deg(R, 0);
    std::vector<bool> gone(links.size(), false);
    for (std::size_t k = 0; k < links.size(); ++k) {
      if (links[k].b >= 0 && slot[find(links[k].a)] == static_cast<int>(i)) {
        ++deg[links[k].a];
        ++deg[links[k].b];
      } else {
        gone[k] = true;
      }
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t k = 0; k < links.size(); ++k) {
        if (gone[k]) continue;
        if (deg[links[k].a] == 1 || deg[links[k].b] == 1) {
          gone[k] = true;
          --deg[links[k].a];
          --deg[links[k].b];
          changed = true;
        }
      }
    }
    for (int r : c.rows) {
      if (r < V && deg[r] >= 2 && g.base.vertices[r].kind == VertexKind::Joint) ++c.joints_on_cycle;
    }
  }
  return comps;
}

}  // namespace detail

/// Every square column subset Δ (|Δ| = number of rows) with its determinant,
/// component structure and cokernel, checked against the minor description.
inline std::vector<MinorReport> minor_analysis(const ExtendedGraph& g, int max_columns = 16) {
  const int R = g.rows(), C = g.columns();
  if (C > max_columns) throw std::length_error("too many columns for exhaustive minor analysis");
  std::vector<MinorReport> out;
  if (C < R) return out;
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(pick.size()) == R) {
      MinorReport rep;
      rep.columns = pick;
      IntMatrix sub(R, std::vector<Integer>(R));
      for (int r = 0; r < R; ++r) {
        for (int k = 0; k < R; ++k) sub[r][k] = g.A[r][pick[k]];
      }
      rep.det = determinant(sub);
      rep.components = detail::minor_components(g, pick);
      int twos = 0;
      bool singular_expected = false;
      for (const auto& c : rep.components) {
        if (c.tree_with_ground_edge) {
          ++twos;
        } else if (c.unicyclic) {
          if (c.joints_on_cycle % 2 == 1) ++twos;
          else singular_expected = true;
        } else {
          singular_expected = true;
        }
      }
      if (rep.det != 0) {
        for (const auto& c : rep.components) {
          if (!c.tree_with_ground_edge && !c.unicyclic) rep.structure_ok = false;
        }
        for (const auto& f : smith_invariants(sub)) {
          if (f > 1) rep.cokernel.push_back(f);
        }
        rep.predicted.assign(twos, Integer(2));
        rep.cokernel_matches = rep.cokernel == rep.predicted;
        Integer a = abs(rep.det);
        rep.det_in_unit_or_two = a == 1 || a == 2;
        rep.det_matches_components = !singular_expected && a == (Integer(1) << twos);
      } else {
        rep.det_matches_components = singular_expected;
      }
      out.push_back(std::move(rep));
      return;
    }
    for (int c = start; c < C; ++c) {
      if (C - c < R - static_cast<int>(pick.size())) break;
      pick.push_back(c);
      rec(c + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

/// Total unimodularity by brute force over all square submatrices.
inline bool is_totally_unimodular(const IntMatrix& a) {
  const int R = static_cast<int>(a.size());
  const int C = R ? static_cast<int>(a[0].size()) : 0;
  for (int k = 1; k <= std::min(R, C); ++k) {
    std::vector<bool> rsel(R, false), csel(C, false);
    std::fill(rsel.begin(), rsel.begin() + k, true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + k, true);
      do {
        IntMatrix sub;
        for (int r = 0; r < R; ++r) {
          if (!rsel[r]) continue;
          std::vector<Integer> row;
          for (int c = 0; c < C; ++c) {
            if (csel[c]) row.push_back(a[r][c]);
          }
          sub.push_back(row);
        }
        Integer det = abs(determinant(sub));
        if (det > 1) return false;
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
  }
  return true;
}

/// Sign pattern of the basic solutions of A y = d − A·lb over all column
/// bases; constant on an open chamber. Entries: −1, 0, +1 per basic
/// coordinate, and 2 marking an inconsistent basic system.
inline std::vector<int> chamber_signature(const ExtendedGraph& g, const std::vector<std::int64_t>& d) {
  const int C = g.columns();
  RatMatrix A = to_rational(g.A);
  std::vector<Rational> rhs(g.rows());
  for (int r = 0; r < g.rows(); ++r) {
    Rational s = d[r];
    for (int c = 0; c < C; ++c) s -= A[r][c] * g.lower_bound(c);
    rhs[r] = s;
  }
  const int rk = static_cast<int>(rank(A));
  std::vector<int> sig;
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(pick.size()) == rk) {
      RatMatrix sub(g.rows(), std::vector<Rational>(rk));
      for (int r = 0; r < g.rows(); ++r) {
        for (int k = 0; k < rk; ++k) sub[r][k] = A[r][pick[k]];
      }
      if (static_cast<int>(rank(sub)) != rk) return;
      auto x = solve(sub, rhs);
      if (!x) {
        sig.push_back(2);
        return;
      }
      for (const auto& v : *x) sig.push_back(v > 0 ? 1 : (v < 0 ? -1 : 0));
      return;
    }
    for (int c = start; c < C; ++c) {
      pick.push_back(c);
      rec(c + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return sig;
}

}  // namespace tmoebius
