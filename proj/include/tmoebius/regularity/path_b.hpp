#pragma once

#include "tmoebius/multiplicity/multiplicity.hpp"
#include "tmoebius/regularity/extended_graph.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace tmoebius {

/// One marking pattern of a degree-carrying topology, reduced to a constant
/// times a monomial in the weights.
struct PatternTerm {
  Rational constant = 0;
  std::vector<int> exponents;  // per extended-graph column
};

namespace detail {

inline bool is_floor_kind(VertexKind k) { return k != VertexKind::Joint; }

/// 2^N · orderings · ∏_F a^k σ₁(a) · ∏_G 2 (2a)^k σ̃₁(2a), and the weight
/// exponents: one per adjacent floor, one more when the elevator is unmarked.
inline PatternTerm pattern_term(const ExtendedGraph& g, const MarkingPattern& p, ExponentConvention c) {
  const auto& d = g.base;
  PatternTerm t;
  Integer k = (Integer(1) << p.cycles) * p.orderings;
  for (int v = 0; v < static_cast<int>(d.vertices.size()); ++v) {
    const auto& vx = d.vertices[v];
    const long e = static_cast<long>(d.valence(v)) - (c == ExponentConvention::ValMinusOne ? 1 : 0);
    if (vx.kind == VertexKind::Etage) {
      const std::int64_t a = vx.degree.as_integer();
      k *= ipow(Integer(a), e) * sigma1(a);
    } else if (vx.kind == VertexKind::Ground) {
      const std::int64_t n = vx.degree.doubled();
      k *= 2 * ipow(Integer(n), e) * sigma1_tilde(n);
    }
  }
  t.constant = Rational(k);
  t.exponents.assign(g.columns(), 0);
  for (int col = 0; col < g.columns(); ++col) {
    const int r = g.column_ref[col];
    switch (g.column_kind[col]) {
      case ColumnKind::BoundedEdge:
        t.exponents[col] = (is_floor_kind(d.vertices[d.edges[r].tail].kind) ? 1 : 0) + 1 + (p.edge_marked[r] ? 0 : 1);
        break;
      case ColumnKind::End:
        t.exponents[col] = (is_floor_kind(d.vertices[d.ends[r].source].kind) ? 1 : 0) + (p.end_marked[r] ? 0 : 1);
        break;
      case ColumnKind::GroundEdge: break;
    }
  }
  return t;
}

}  // namespace detail

/// A degree-carrying topology with its extended graph and the pattern terms
/// for every set of fixed ends met so far.
struct WeightedTopology {
  FloorDiagram topology;
  ExtendedGraph graph;
  Integer aut = 1;
  int point_marks = 0;
  ExponentConvention convention = ExponentConvention::ValMinusOne;
  std::map<std::uint32_t, std::vector<PatternTerm>> terms;

  const std::vector<PatternTerm>& terms_for(std::uint32_t fixed_mask) {
    auto it = terms.find(fixed_mask);
    if (it != terms.end()) return it->second;
    std::vector<PatternTerm> list;
    for (const auto& p : marking_patterns_for(topology, fixed_mask, point_marks)) {
      list.push_back(detail::pattern_term(graph, p, convention));
    }
    return terms.emplace(fixed_mask, std::move(list)).first->second;
  }

  /// Σ_patterns constant · Σ_w monomial for end entries given in end order.
  Rational value(const std::vector<std::int64_t>& end_entries, std::uint32_t fixed_mask) {
    const auto& list = terms_for(fixed_mask);
    if (list.empty()) return 0;
    std::vector<std::vector<int>> exps;
    for (const auto& t : list) exps.push_back(t.exponents);
    auto sums = weighting_sums(graph, graph.divergence(end_entries), exps);
    Rational total = 0;
    for (std::size_t i = 0; i < list.size(); ++i) total += list[i].constant * sums[i];
    return total;
  }

  /// Largest degree in the entries of any pattern's count: solution dimension
  /// plus monomial degree.
  int degree_bound() {
    const int dim = graph.columns() - static_cast<int>(rank(graph.A));
    int best = dim;
    for (std::uint32_t mask = 0; mask < (1u << topology.ends.size()); ++mask) {
      for (const auto& t : terms_for(mask)) {
        best = std::max(best, dim + std::accumulate(t.exponents.begin(), t.exponents.end(), 0));
      }
    }
    return best;
  }
};

inline WeightedTopology make_weighted_topology(const FloorDiagram& t, SurfaceKind s, int point_marks,
                                               ExponentConvention c) {
  WeightedTopology w;
  w.topology = t;
  w.graph = build_extended(t, s);
  w.aut = aut_order(t);
  w.point_marks = point_marks;
  w.convention = c;
  return w;
}

/// Every degree-carrying topology of genus g and class degree a with `ends`
/// ends and at most `max_joints` joints, up to isomorphism.
inline std::vector<FloorDiagram> degree_topologies(SurfaceKind s, int g, HalfInt a, int ends, int max_joints) {
  TopologyBounds tb;
  tb.genus = g;
  tb.ends = ends;
  tb.max_joints = max_joints;
  tb.max_floors = g;
  std::map<std::vector<std::int64_t>, FloorDiagram> found;
  for (const auto& topo : enumerate_topologies(tb)) {
    for (const auto& d : assign_degrees(topo, s, a)) {
      auto cf = canonicalize(d);
      found.emplace(cf.code, cf.diagram);
    }
  }
  std::vector<FloorDiagram> out;
  for (auto& [code, d] : found) out.push_back(std::move(d));
  return out;
}

/// Structural joint bound: the 2 n_J outgoing elevators of the joints are
/// among the g − 1 + n_J bounded edges and the ends, so n_J ≤ g − 1 + #ends.
inline int joint_bound(int g, int ends) { return g - 1 + ends; }

/// Σ_T 1/|Aut T| Σ_β Σ_patterns constant · Σ_w monomial, where β runs over
/// the bijections from entry slots (fixed entries first) onto the ends of T.
/// Each weighted diagram with its fixed ends appears ∏μ_i! ∏ν_i! times, so
/// dividing by ∏ν_i! recovers N; with distinct free entries this is N itself.
class PathBModel {
 public:
  PathBModel(SurfaceKind s, int genus, HalfInt a, int fixed_count, int free_count,
             ExponentConvention c = ExponentConvention::ValMinusOne, int max_joints = -1)
      : surface_(s), genus_(genus), fixed_count_(fixed_count), free_count_(free_count) {
    if (genus < 1) throw std::invalid_argument("genus must be at least 1");
    const int ends = fixed_count + free_count;
    if (ends < 1) throw std::invalid_argument("at least one end is required");
    if (ends > 6) throw std::length_error("too many ends for the weighting path");
    if (max_joints < 0) max_joints = joint_bound(genus, ends);
    for (const auto& t : degree_topologies(s, genus, a, ends, max_joints)) {
      topologies_.push_back(make_weighted_topology(t, s, free_count + genus - 1, c));
    }
    std::vector<int> perm(ends);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      bijections_.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  std::size_t topology_count() const { return topologies_.size(); }
  std::vector<WeightedTopology>& topologies() { return topologies_; }
  const std::vector<std::vector<int>>& bijections() const { return bijections_; }

  /// Entries placed on the ends of one topology by β (β[e] = slot of end e),
  /// and the matching mask of fixed ends.
  std::pair<std::vector<std::int64_t>, std::uint32_t> placement(const std::vector<int>& beta,
                                                                const std::vector<std::int64_t>& slots) const {
    std::vector<std::int64_t> entries(beta.size());
    std::uint32_t mask = 0;
    for (std::size_t e = 0; e < beta.size(); ++e) {
      entries[e] = slots[beta[e]];
      if (beta[e] < fixed_count_) mask |= 1u << e;
    }
    return {entries, mask};
  }

  Rational labeled_value(const std::vector<std::int64_t>& fixed, const std::vector<std::int64_t>& free) {
    if (static_cast<int>(fixed.size()) != fixed_count_ || static_cast<int>(free.size()) != free_count_) {
      throw std::invalid_argument("entry counts do not match the model");
    }
    std::vector<std::int64_t> slots = fixed;
    slots.insert(slots.end(), free.begin(), free.end());
    for (auto x : slots) {
      if (x < 1) throw std::invalid_argument("entries must be positive");
    }
    Rational total = 0;
    for (auto& t : topologies_) {
      Rational sum = 0;
      for (const auto& beta : bijections_) {
        auto [entries, mask] = placement(beta, slots);
        sum += t.value(entries, mask);
      }
      total += sum / Rational(t.aut);
    }
    return total;
  }

  int degree_bound() {
    int best = 0;
    for (auto& t : topologies_) best = std::max(best, t.degree_bound());
    return best;
  }

  SurfaceKind surface() const { return surface_; }
  int genus() const { return genus_; }
  int fixed_count() const { return fixed_count_; }
  int free_count() const { return free_count_; }

 private:
  SurfaceKind surface_;
  int genus_;
  int fixed_count_, free_count_;
  std::vector<WeightedTopology> topologies_;
  std::vector<std::vector<int>> bijections_;
};

inline std::vector<std::int64_t> entries_of(const Partition& p) {
  return std::vector<std::int64_t>(p.parts().begin(), p.parts().end());
}

/// N computed from topologies and weighting counts, without enumerating weighted diagrams.
inline Rational invariant_via_weightings(const InvariantRequest& r) {
  check_request(r);
  if (!r.cls.valid_for(r.surface)) return 0;
  const int ends = r.fixed.length() + r.free.length();
  // Each joint sends 2w ≥ 2 to the ends.
  const int joints = std::min(joint_bound(r.genus, ends), static_cast<int>(r.cls.b.doubled() / 2));
  PathBModel model(r.surface, r.genus, r.cls.a, r.fixed.length(), r.free.length(), r.convention, joints);
  return model.labeled_value(entries_of(r.fixed), entries_of(r.free)) / Rational(r.free.symmetry_order());
}

}  // namespace tmoebius
