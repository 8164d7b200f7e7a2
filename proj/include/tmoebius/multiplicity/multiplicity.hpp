#pragma once

#include "tmoebius/core/divisors.hpp"
#include "tmoebius/core/laurent.hpp"
#include "tmoebius/diagram/canonical.hpp"
#include "tmoebius/enumerate/diagrams.hpp"
#include "tmoebius/enumerate/markings.hpp"
#include "tmoebius/parallel.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace tmoebius {

/// Exponent on a_F (resp. 2a_G) in the floor multiplicities: val − 1 as in
/// the definition, or val as the genus-1 worked example effectively uses.
enum class ExponentConvention { ValMinusOne, Val };

inline const char* convention_name(ExponentConvention c) {
  return c == ExponentConvention::ValMinusOne ? "val-1" : "val";
}
inline ExponentConvention parse_convention(const std::string& text) {
  if (text == "val-1" || text == "valMinusOne") return ExponentConvention::ValMinusOne;
  if (text == "val") return ExponentConvention::Val;
  throw std::invalid_argument("convention must be val-1 or val, got '" + text + "'");
}

namespace detail {

inline long exponent(std::size_t val, ExponentConvention c) {
  return static_cast<long>(val) - (c == ExponentConvention::ValMinusOne ? 1 : 0);
}

inline Integer weight_product(const std::vector<int>& w) {
  Integer p = 1;
  for (int x : w) p *= x;
  return p;
}

}  // namespace detail

/// m(F) = a^{val-1} σ₁(a) ∏ w_e.
inline Integer etage_mult(std::int64_t a, const std::vector<int>& w,
                          ExponentConvention c = ExponentConvention::ValMinusOne) {
  if (a < 1) throw std::domain_error("etage degree must be positive");
  if (w.empty()) throw std::domain_error("etage must have adjacent elevators");
  return ipow(Integer(a), detail::exponent(w.size(), c)) * sigma1(a) * detail::weight_product(w);
}

/// m(G) = 2 (2a_G)^{val-1} σ̃₁(2a_G) ∏ w_e.
inline Integer ground_mult(HalfInt a_g, const std::vector<int>& w,
                           ExponentConvention c = ExponentConvention::ValMinusOne) {
  const std::int64_t n = a_g.doubled();
  if (n < 1) throw std::domain_error("ground floor degree must be at least 1/2");
  if (w.empty()) throw std::domain_error("ground floor must have adjacent elevators");
  return 2 * ipow(Integer(n), detail::exponent(w.size(), c)) * sigma1_tilde(n) * detail::weight_product(w);
}

/// m^q(F) = Σ_{k | a} k^{val-1} ∏ [w_e a / k]_q. Under the val convention the
/// sum is scaled by a so that q = 1 still recovers etage_mult.
inline LaurentPolynomial<Integer> etage_mult_q(std::int64_t a, const std::vector<int>& w,
                                               ExponentConvention c = ExponentConvention::ValMinusOne) {
  if (a < 1) throw std::domain_error("etage degree must be positive");
  if (w.empty()) throw std::domain_error("etage must have adjacent elevators");
  LaurentPolynomial<Integer> sum;
  for (std::int64_t k : divisors(a)) {
    LaurentPolynomial<Integer> term(ipow(Integer(k), static_cast<long>(w.size()) - 1));
    for (int x : w) term *= q_analog(x * (a / k));
    sum += term;
  }
  return c == ExponentConvention::Val ? sum.scaled(Integer(a)) : sum;
}

/// m^q(G) = 2 Σ_{k | 2a_G, k odd} k^{val-1} ∏ [w_e 2a_G / k]_q.
inline LaurentPolynomial<Integer> ground_mult_q(HalfInt a_g, const std::vector<int>& w,
                                                ExponentConvention c = ExponentConvention::ValMinusOne) {
  const std::int64_t n = a_g.doubled();
  if (n < 1) throw std::domain_error("ground floor degree must be at least 1/2");
  if (w.empty()) throw std::domain_error("ground floor must have adjacent elevators");
  LaurentPolynomial<Integer> sum;
  for (std::int64_t k : divisors(n)) {
    if (k % 2 == 0) continue;
    LaurentPolynomial<Integer> term(2 * ipow(Integer(k), static_cast<long>(w.size()) - 1));
    for (int x : w) term *= q_analog(x * (n / k));
    sum += term;
  }
  return c == ExponentConvention::Val ? sum.scaled(Integer(n)) : sum;
}

/// ∏_F m(F) ∏_G m(G).
inline Integer floor_factor(const FloorDiagram& d, ExponentConvention c) {
  Integer p = 1;
  for (int v = 0; v < static_cast<int>(d.vertices.size()); ++v) {
    const auto& vx = d.vertices[v];
    if (vx.kind == VertexKind::Etage) p *= etage_mult(vx.degree.as_integer(), d.adjacent_weights(v), c);
    if (vx.kind == VertexKind::Ground) p *= ground_mult(vx.degree, d.adjacent_weights(v), c);
  }
  return p;
}

inline LaurentPolynomial<Integer> floor_factor_q(const FloorDiagram& d, ExponentConvention c) {
  LaurentPolynomial<Integer> p(Integer(1));
  for (int v = 0; v < static_cast<int>(d.vertices.size()); ++v) {
    const auto& vx = d.vertices[v];
    if (vx.kind == VertexKind::Etage) p *= etage_mult_q(vx.degree.as_integer(), d.adjacent_weights(v), c);
    if (vx.kind == VertexKind::Ground) p *= ground_mult_q(vx.degree, d.adjacent_weights(v), c);
  }
  return p;
}

/// 2^N ∏_{unmarked elevators} w_e for one pattern.
inline Integer pattern_factor(const FloorDiagram& d, const MarkingPattern& p) {
  Integer f = Integer(1) << p.cycles;
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    if (!p.edge_marked[e]) f *= d.edges[e].weight;
  }
  for (std::size_t e = 0; e < d.ends.size(); ++e) {
    if (!p.end_marked[e]) f *= d.ends[e].weight;
  }
  return f;
}

/// m(D, m) = 2^N / |Aut D| ∏ m(F) ∏ m(G) ∏_{unmarked} w_e for any marking of the pattern.
inline Rational marked_mult(const FloorDiagram& d, const MarkingPattern& p,
                            ExponentConvention c = ExponentConvention::ValMinusOne) {
  return Rational(pattern_factor(d, p) * floor_factor(d, c), aut_order(d));
}

inline LaurentPolynomial<Rational> marked_mult_q(const FloorDiagram& d, const MarkingPattern& p,
                                                 ExponentConvention c = ExponentConvention::ValMinusOne) {
  return floor_factor_q(d, c).convert<Rational>().scaled(Rational(pattern_factor(d, p), aut_order(d)));
}

/// Marked multiplicity of an explicit marking.
inline Rational marked_mult(const FloorDiagram& d, const Marking& m,
                            ExponentConvention c = ExponentConvention::ValMinusOne) {
  MarkingPattern p;
  p.edge_marked.assign(d.edges.size(), false);
  p.end_marked.assign(d.ends.size(), false);
  for (const auto& cell : m.placements) {
    if (cell.kind == CellKind::Edge) p.edge_marked[cell.index] = true;
    if (cell.kind == CellKind::End) p.end_marked[cell.index] = true;
  }
  auto rep = classify_components(d, p.edge_marked, p.end_marked);
  if (!rep.valid()) throw std::invalid_argument("marking violates condition (c)");
  p.cycles = rep.cycles;
  return marked_mult(d, p, c);
}

struct DiagramContribution {
  Rational N = 0;
  LaurentPolynomial<Rational> BG;
  Integer markings = 0;
};

/// Sum of marked multiplicities over all markings of one diagram.
inline DiagramContribution diagram_contribution(const FloorDiagram& d, const Partition& fixed, const Partition& free,
                                                ExponentConvention c, bool refined = true) {
  DiagramContribution out;
  auto patterns = marking_patterns(d, fixed, free);
  if (patterns.empty()) return out;
  const Integer aut = aut_order(d);
  const Integer floors = floor_factor(d, c);
  Integer weighted = 0;
  for (const auto& p : patterns) {
    out.markings += p.marking_count();
    weighted += p.marking_count() * pattern_factor(d, p);
  }
  out.N = Rational(weighted * floors, aut);
  if (refined) out.BG = floor_factor_q(d, c).convert<Rational>().scaled(Rational(weighted, aut));
  return out;
}

struct InvariantRequest {
  SurfaceKind surface = SurfaceKind::M0;
  int genus = 1;
  HomologyClass cls;
  Partition fixed;  // μ
  Partition free;   // ν
  ExponentConvention convention = ExponentConvention::ValMinusOne;
};

struct InvariantResult {
  Rational N = 0;
  LaurentPolynomial<Rational> BG;
  std::size_t diagram_count = 0;
  Integer marking_count = 0;
  ExponentConvention convention = ExponentConvention::ValMinusOne;
};

/// Rejects ‖μ‖ + ‖ν‖ ≠ 2b; parity-violating classes have no diagrams and give 0.
inline void check_request(const InvariantRequest& r) {
  if (r.genus < 1) throw std::invalid_argument("genus must be at least 1");
  if (r.cls.b.doubled() < 1) throw std::invalid_argument("b must be positive");
  if (r.cls.a.doubled() < 1) throw std::invalid_argument("a must be positive");
  if (r.fixed.norm() + r.free.norm() != r.cls.b.doubled()) {
    throw std::invalid_argument("|mu| + |nu| = " + std::to_string(r.fixed.norm() + r.free.norm()) +
                                " differs from 2b = " + std::to_string(r.cls.b.doubled()));
  }
}

inline InvariantResult aggregate(const std::vector<FloorDiagram>& diagrams, const InvariantRequest& r, int jobs,
                                 bool refined = true) {
  InvariantResult res;
  res.convention = r.convention;
  res.diagram_count = diagrams.size();
  auto parts = parallel_map(diagrams, jobs, [&](const FloorDiagram& d) {
    return diagram_contribution(d, r.fixed, r.free, r.convention, refined);
  });
  for (const auto& p : parts) {
    res.N += p.N;
    res.BG += p.BG;
    res.marking_count += p.markings;
  }
  return res;
}

inline InvariantResult compute_invariant(const InvariantRequest& r, int jobs = 1, bool refined = true) {
  check_request(r);
  if (!r.cls.valid_for(r.surface)) {
    InvariantResult zero;
    zero.convention = r.convention;
    return zero;
  }
  DiagramQuery q{r.surface, r.genus, r.cls, r.fixed + r.free};
  return aggregate(enumerate_diagrams(q, jobs), r, jobs, refined);
}

/// (2a)^{2b} (σ̃₁(2a) + [a, b ∈ ℤ] σ₁(a)).
inline Integer genus1_formula(SurfaceKind s, HalfInt a, HalfInt b) {
  if (a.doubled() < 1 || b.doubled() < 1) throw std::domain_error("genus1_formula needs 2a >= 1 and 2b >= 1");
  if (!HomologyClass{a, b}.valid_for(s)) throw std::domain_error("class violates the parity rule");
  Integer bracket = (a.is_integer() && b.is_integer()) ? Integer(sigma1(a.as_integer())) : Integer(0);
  return ipow(Integer(a.doubled()), b.doubled()) * (sigma1_tilde(a.doubled()) + bracket);
}

}  // namespace tmoebius
