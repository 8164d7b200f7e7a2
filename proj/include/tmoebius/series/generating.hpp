#pragma once

#include "tmoebius/core/linear_algebra.hpp"
#include "tmoebius/core/truncated_series.hpp"
#include "tmoebius/multiplicity/multiplicity.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tmoebius {

using Series = TruncatedSeries<Rational>;

struct SeriesRequest {
  SurfaceKind surface = SurfaceKind::M0;
  int genus = 1;
  HalfInt b;
  Partition fixed;
  Partition free;
  HalfInt a_max = HalfInt::from_integer(10);
  ExponentConvention convention = ExponentConvention::ValMinusOne;

  int order() const { return static_cast<int>(a_max.doubled()); }
  Partition profile() const { return fixed + free; }
};

inline void check_series_request(const SeriesRequest& r) {
  if (r.genus < 1) throw std::invalid_argument("genus must be at least 1");
  if (r.fixed.norm() + r.free.norm() != r.b.doubled()) {
    throw std::invalid_argument("|mu| + |nu| = " + std::to_string(r.fixed.norm() + r.free.norm()) +
                                " differs from 2b = " + std::to_string(r.b.doubled()));
  }
  if (r.a_max.doubled() < 0) throw std::invalid_argument("a_max must be nonnegative");
}

/// Canonical diagrams of class a obtained by assigning degrees to the shapes.
inline std::vector<FloorDiagram> diagrams_from_shapes(const std::vector<FloorDiagram>& shapes, SurfaceKind s,
                                                      HalfInt a, int jobs = 1) {
  auto per_shape = parallel_map(shapes, jobs, [&](const FloorDiagram& shape) {
    std::map<std::vector<std::int64_t>, FloorDiagram> local;
    for (const auto& d : assign_degrees(shape, s, a)) {
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

/// F(y) = Σ_a N_{g, aE+bF}(μ, ν) y^{2a}, up to y^{2 a_max}.
inline Series generating_series(const SeriesRequest& r, int jobs = 1) {
  check_series_request(r);
  Series out(r.order());
  if (r.profile().empty()) return out;
  auto shapes = enumerate_shapes(r.surface, r.genus, r.b, r.profile(), jobs);
  for (int two_a = 1; two_a <= r.order(); ++two_a) {
    HomologyClass cls{HalfInt::from_doubled(two_a), r.b};
    if (!cls.valid_for(r.surface)) continue;
    InvariantRequest ir{r.surface, r.genus, cls, r.fixed, r.free, r.convention};
    auto res = aggregate(diagrams_from_shapes(shapes, r.surface, cls.a, jobs), ir, jobs, false);
    out.set(two_a, res.N);
  }
  return out;
}

/// Direct sum over distinct degree assignments of one shape, each diagram
/// weighted by its own automorphism group.
inline Series per_diagram_series(const FloorDiagram& shape, SurfaceKind s, const Partition& fixed,
                                 const Partition& free, int order,
                                 ExponentConvention c = ExponentConvention::ValMinusOne) {
  Series out(order);
  for (int two_a = 1; two_a <= order; ++two_a) {
    std::map<std::vector<std::int64_t>, FloorDiagram> distinct;
    for (const auto& d : assign_degrees(shape, s, HalfInt::from_doubled(two_a))) {
      auto cf = canonicalize(d);
      distinct.emplace(cf.code, cf.diagram);
    }
    Rational sum = 0;
    for (const auto& [code, d] : distinct) sum += diagram_contribution(d, fixed, free, c, false).N;
    out.set(two_a, sum);
  }
  return out;
}

/// Generator families: (D^k G₂)(y²) for étages, D^k H, D^k H₀, D^k H₁ for ground floors.
enum class GeneratorKind { G2Squared, H, H0, H1 };

inline const char* generator_name(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::G2Squared: return "G2(y^2)";
    case GeneratorKind::H: return "H";
    case GeneratorKind::H0: return "H0";
    case GeneratorKind::H1: return "H1";
  }
  return "?";
}

struct Generator {
  GeneratorKind kind = GeneratorKind::G2Squared;
  int derivatives = 0;
  auto operator<=>(const Generator&) const = default;

  std::string to_string() const {
    std::string base = generator_name(kind);
    if (derivatives == 0) return base;
    if (kind == GeneratorKind::G2Squared) return "(D^" + std::to_string(derivatives) + " G2)(y^2)";
    return "D^" + std::to_string(derivatives) + " " + base;
  }

  Series series(int order) const {
    switch (kind) {
      case GeneratorKind::G2Squared: return eisenstein_G2(order).derivative(derivatives).substitute_power(2);
      case GeneratorKind::H: return series_H(order).derivative(derivatives);
      case GeneratorKind::H0: return series_H0(order).derivative(derivatives);
      case GeneratorKind::H1: return series_H1(order).derivative(derivatives);
    }
    return Series(order);
  }
};

/// A shape's contribution written as W · ∏ generators.
struct Factorization {
  Rational W = 0;
  std::vector<Generator> factors;  // sorted
  bool zero = false;                // some ground floor can never satisfy its parity

  Series series(int order) const {
    Series s(order);
    if (zero || W == 0) return s;
    s.set(0, W);
    for (const auto& g : factors) s = s * g.series(order);
    return s;
  }

  std::string to_string() const {
    if (zero || W == 0) return "0";
    std::string s = tmoebius::to_string(W);
    for (const auto& g : factors) s += " * " + g.to_string();
    return s;
  }
};

inline Factorization factorized_form(const FloorDiagram& shape, SurfaceKind s, const Partition& fixed,
                                     const Partition& free, ExponentConvention c = ExponentConvention::ValMinusOne) {
  Factorization f;
  const int extra = c == ExponentConvention::Val ? 1 : 0;
  Integer weights = 1;
  for (int v = 0; v < static_cast<int>(shape.vertices.size()); ++v) {
    const auto& vx = shape.vertices[v];
    if (!vx.is_floor()) continue;
    auto w = shape.adjacent_weights(v);
    for (int x : w) weights *= x;
    int k = static_cast<int>(w.size()) - 1 + extra;
    if (vx.kind == VertexKind::Etage) {
      f.factors.push_back({GeneratorKind::G2Squared, k});
    } else {
      weights *= 2;
      std::int64_t out = shape.out_weight(v);
      if (delta(s) == 0) {
        if (out % 2 != 0) f.zero = true;
        f.factors.push_back({GeneratorKind::H, k});
      } else {
        f.factors.push_back({out % 2 == 0 ? GeneratorKind::H0 : GeneratorKind::H1, k});
      }
    }
  }
  std::sort(f.factors.begin(), f.factors.end());
  Integer marked = 0;
  for (const auto& p : marking_patterns(shape, fixed, free)) marked += p.marking_count() * pattern_factor(shape, p);
  f.W = Rational(marked * weights, aut_order(shape));
  return f;
}

struct SpanCertificate {
  bool ok = false;
  std::vector<Rational> coefficients;  // when ok
  int failure_index = -1;              // first coefficient that cannot be matched
};

/// Decides whether s agrees with some rational combination of the generators
/// up to y^order, scanning coefficients in increasing order.
inline SpanCertificate quasimodular_span_check(const Series& s, const std::vector<Series>& generators, int order) {
  if (order > s.order()) throw std::invalid_argument("span check order exceeds the series truncation");
  for (const auto& g : generators) {
    if (order > g.order()) throw std::invalid_argument("span check order exceeds a generator truncation");
  }
  SpanCertificate cert;
  const std::size_t k = generators.size();
  RatMatrix rows;
  for (int n = 0; n <= order; ++n) {
    std::vector<Rational> row(k + 1);
    for (std::size_t j = 0; j < k; ++j) row[j] = generators[j][n];
    row[k] = s[n];
    rows.push_back(row);
    RatMatrix work = rows;
    auto pivots = row_reduce(work, k + 1);
    if (!pivots.empty() && pivots.back() == k) {
      cert.failure_index = n;
      return cert;
    }
  }
  RatMatrix a;
  std::vector<Rational> b;
  for (const auto& row : rows) {
    a.emplace_back(row.begin(), row.end() - 1);
    b.push_back(row.back());
  }
  auto x = solve(a, b);
  cert.ok = x.has_value();
  if (x) cert.coefficients = *x;
  return cert;
}

/// All products of at most `degree` generators (with repetition), degree-0 included.
inline std::vector<Series> product_closure(const std::vector<Series>& generators, int degree, int order) {
  std::vector<Series> out;
  Series one(order);
  one.set(0, 1);
  std::function<void(std::size_t, int, const Series&)> rec = [&](std::size_t start, int left, const Series& cur) {
    out.push_back(cur);
    if (left == 0) return;
    for (std::size_t i = start; i < generators.size(); ++i) rec(i, left - 1, cur * generators[i].truncated(order));
  };
  rec(0, degree, one);
  return out;
}

/// Shape decomposition of a generating series: each degree-free shape with
/// its factorization; the distinct generator monomials form the span basis.
struct SeriesDecomposition {
  std::vector<FloorDiagram> shapes;
  std::vector<Factorization> factorizations;
  std::vector<std::vector<Generator>> monomials;
};

inline SeriesDecomposition decompose(const SeriesRequest& r, int jobs = 1) {
  check_series_request(r);
  SeriesDecomposition dec;
  dec.shapes = enumerate_shapes(r.surface, r.genus, r.b, r.profile(), jobs);
  dec.factorizations = parallel_map(dec.shapes, jobs, [&](const FloorDiagram& shape) {
    return factorized_form(shape, r.surface, r.fixed, r.free, r.convention);
  });
  std::set<std::vector<Generator>> seen;
  for (const auto& f : dec.factorizations) {
    if (!f.zero && f.W != 0 && seen.insert(f.factors).second) dec.monomials.push_back(f.factors);
  }
  return dec;
}

inline Series monomial_series(const std::vector<Generator>& m, int order) {
  Series s(order);
  s.set(0, 1);
  for (const auto& g : m) s = s * g.series(order);
  return s;
}

}  // namespace tmoebius
