#pragma once

#include "tmoebius/regularity/path_b.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tmoebius {

/// A one-parameter family of entries base + t·dir, t = 0, 1, 2, …
struct Ray {
  std::vector<std::int64_t> base, dir;

  std::vector<std::int64_t> at(std::int64_t t) const {
    std::vector<std::int64_t> out(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) out[i] = base[i] + t * dir[i];
    return out;
  }
  bool has_odd_step() const {
    return std::any_of(dir.begin(), dir.end(), [](std::int64_t x) { return x % 2 != 0; });
  }
  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(base[i]);
    }
    s += ")+t(";
    for (std::size_t i = 0; i < dir.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(dir[i]);
    }
    return s + ")";
  }
};

/// Either the whole labeled invariant (every topology) or one shape whose
/// ends receive the entries in end order, the first `fixed` of them fixed.
struct RegularityFamily {
  std::string name;
  SurfaceKind surface = SurfaceKind::M0;
  int genus = 1;
  HalfInt a = HalfInt::from_integer(1);
  Ray fixed, free;
  ExponentConvention convention = ExponentConvention::ValMinusOne;
  std::optional<FloorDiagram> shape;
};

/// A point where some basic solution of the shifted system changes sign.
struct Wall {
  std::size_t topology = 0;
  std::size_t bijection = 0;
  std::vector<int> basis;
  int coordinate = 0;  // column index
  Rational t = 0;

  std::string to_string() const {
    std::string s = "topology " + std::to_string(topology) + ", ends ordering " + std::to_string(bijection) +
                    ", basis {";
    for (std::size_t i = 0; i < basis.size(); ++i) s += (i ? "," : "") + std::to_string(basis[i]);
    return s + "}, column " + std::to_string(coordinate) + " vanishes at t = " + tmoebius::to_string(t);
  }
};

namespace detail {

/// Sign roots in t of every basic solution of A y = d(t) − A·lb along d(t) = d0 + t·d1.
inline void collect_walls(const ExtendedGraph& g, const std::vector<std::int64_t>& d0,
                          const std::vector<std::int64_t>& d1, std::size_t topo, std::size_t bij,
                          std::vector<Wall>& out) {
  const int C = g.columns(), R = g.rows();
  RatMatrix A = to_rational(g.A);
  std::vector<Rational> r0(R), r1(R);
  for (int r = 0; r < R; ++r) {
    r0[r] = d0[r];
    r1[r] = d1[r];
    for (int c = 0; c < C; ++c) r0[r] -= A[r][c] * g.lower_bound(c);
  }
  const int rk = static_cast<int>(rank(A));
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(pick.size()) == rk) {
      RatMatrix sub(R, std::vector<Rational>(rk));
      for (int r = 0; r < R; ++r) {
        for (int k = 0; k < rk; ++k) sub[r][k] = A[r][pick[k]];
      }
      if (static_cast<int>(rank(sub)) != rk) return;
      auto x0 = solve(sub, r0);
      auto x1 = solve(sub, r1);
      if (!x0 || !x1) return;  // d leaves the column space: no solutions at all
      for (int k = 0; k < rk; ++k) {
        if ((*x1)[k] == 0) continue;
        out.push_back({topo, bij, pick, pick[k], -(*x0)[k] / (*x1)[k]});
      }
      return;
    }
    for (int c = start; c < C; ++c) {
      pick.push_back(c);
      rec(c + 1);
      pick.pop_back();
    }
  };
  rec(0);
}

}  // namespace detail

/// Evaluates a family at t through the weighting counts.
class FamilyModel {
 public:
  explicit FamilyModel(const RegularityFamily& f) : family_(f) {
    if (f.fixed.base.size() != f.fixed.dir.size() || f.free.base.size() != f.free.dir.size()) {
      throw std::invalid_argument("ray base and direction differ in length");
    }
    if (f.shape) {
      const auto& s = *f.shape;
      if (s.ends.size() != f.fixed.base.size() + f.free.base.size()) {
        throw std::invalid_argument("shape has " + std::to_string(s.ends.size()) + " ends but the family has " +
                                    std::to_string(f.fixed.base.size() + f.free.base.size()) + " entries");
      }
      single_ = std::make_unique<WeightedTopology>(
          make_weighted_topology(s, f.surface, static_cast<int>(f.free.base.size()) + genus(s) - 1, f.convention));
    } else {
      full_ = std::make_unique<PathBModel>(f.surface, f.genus, f.a, static_cast<int>(f.fixed.base.size()),
                                           static_cast<int>(f.free.base.size()), f.convention);
    }
  }

  Rational value(std::int64_t t) {
    auto fx = family_.fixed.at(t), fr = family_.free.at(t);
    if (full_) return full_->labeled_value(fx, fr);
    std::vector<std::int64_t> entries = fx;
    entries.insert(entries.end(), fr.begin(), fr.end());
    return single_->value(entries, fixed_mask()) / Rational(single_->aut);
  }

  int degree_bound() { return full_ ? full_->degree_bound() : single_->degree_bound(); }

  std::vector<Wall> walls() {
    std::vector<Wall> out;
    auto add = [&](WeightedTopology& w, std::size_t ti, std::size_t bi, const std::vector<int>& beta) {
      std::vector<std::int64_t> e0, e1;
      for (std::size_t e = 0; e < beta.size(); ++e) {
        int slot = beta[e];
        e0.push_back(slot_base(slot));
        e1.push_back(slot_dir(slot));
      }
      auto d0 = w.graph.divergence(e0);
      auto d1 = w.graph.divergence(e1);
      for (int r = 0; r < w.graph.vertex_rows(); ++r) d1[r] = 0;
      detail::collect_walls(w.graph, d0, d1, ti, bi, out);
    };
    if (single_) {
      std::vector<int> id(single_->topology.ends.size());
      std::iota(id.begin(), id.end(), 0);
      add(*single_, 0, 0, id);
    } else {
      for (std::size_t ti = 0; ti < full_->topologies().size(); ++ti) {
        for (std::size_t bi = 0; bi < full_->bijections().size(); ++bi) {
          add(full_->topologies()[ti], ti, bi, full_->bijections()[bi]);
        }
      }
    }
    return out;
  }

  /// Smallest integer t strictly past every wall.
  std::int64_t chamber_start() {
    std::int64_t start = 0;
    for (const auto& w : walls()) {
      Integer fl = boost::multiprecision::numerator(w.t) / boost::multiprecision::denominator(w.t);
      if (fl * boost::multiprecision::denominator(w.t) > boost::multiprecision::numerator(w.t)) fl -= 1;
      start = std::max<std::int64_t>(start, static_cast<std::int64_t>(fl) + 1);
    }
    return start;
  }

  const RegularityFamily& family() const { return family_; }

 private:
  std::uint32_t fixed_mask() const { return (1u << family_.fixed.base.size()) - 1; }
  std::int64_t slot_base(int s) const {
    const auto k = family_.fixed.base.size();
    return s < static_cast<int>(k) ? family_.fixed.base[s] : family_.free.base[s - k];
  }
  std::int64_t slot_dir(int s) const {
    const auto k = family_.fixed.dir.size();
    return s < static_cast<int>(k) ? family_.fixed.dir[s] : family_.free.dir[s - k];
  }

  RegularityFamily family_;
  std::unique_ptr<PathBModel> full_;
  std::unique_ptr<WeightedTopology> single_;
};

/// Coefficients (ascending powers of t) of the interpolating polynomial through the points.
inline std::vector<Rational> interpolate(const std::vector<std::int64_t>& ts, const std::vector<Rational>& ys) {
  const std::size_t n = ts.size();
  RatMatrix v(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    Rational p = 1;
    for (std::size_t j = 0; j < n; ++j) {
      v[i][j] = p;
      p *= ts[i];
    }
  }
  auto x = solve(v, ys);
  if (!x) throw std::runtime_error("interpolation nodes must be distinct");
  while (!x->empty() && x->back() == 0) x->pop_back();
  return *x;
}

inline Rational evaluate_polynomial(const std::vector<Rational>& c, std::int64_t t) {
  Rational s = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * t + *it;
  return s;
}

struct QuasiPolynomialFit {
  std::string family;
  Ray fixed, free;
  std::int64_t t_start = 0;
  int period = 1;                            // residue classes of t mod period
  int degree_bound = 0;
  std::vector<std::vector<Rational>> classes;  // per residue class, ascending coefficients
  Rational residual = 0;                      // Σ |held-out error|
  bool single_polynomial = false;
  std::vector<Rational> single;               // when single_polynomial
  std::vector<std::int64_t> sample_ts;

  bool ok() const { return residual == 0; }

  Rational evaluate(std::int64_t t) const {
    const auto r = static_cast<std::size_t>(((t % period) + period) % period);
    return evaluate_polynomial(classes[r], t);
  }
};

struct FitOptions {
  std::optional<std::int64_t> t_start;  // defaults to the chamber start
  int holdout = 3;
  int period = 0;  // 0: 2 when some step is odd, 1 otherwise
};

/// Exact per-class interpolation with held-out verification, plus a test of
/// whether one polynomial in t covers every class.
inline QuasiPolynomialFit fit_regularity(FamilyModel& model, const FitOptions& opt = {}) {
  QuasiPolynomialFit fit;
  const auto& f = model.family();
  fit.family = f.name;
  fit.fixed = f.fixed;
  fit.free = f.free;
  const std::int64_t start = model.chamber_start();
  if (opt.t_start && *opt.t_start < start) {
    for (const auto& w : model.walls()) {
      if (w.t >= *opt.t_start) throw std::domain_error("sample family crosses a chamber wall: " + w.to_string());
    }
  }
  fit.t_start = opt.t_start.value_or(start);
  fit.period = opt.period > 0 ? opt.period : ((f.fixed.has_odd_step() || f.free.has_odd_step()) ? 2 : 1);
  fit.degree_bound = model.degree_bound();
  const int need = fit.degree_bound + 1;
  const int total = need + opt.holdout;
  std::map<std::int64_t, Rational> values;
  auto value = [&](std::int64_t t) {
    auto it = values.find(t);
    if (it == values.end()) it = values.emplace(t, model.value(t)).first;
    return it->second;
  };
  fit.classes.resize(fit.period);
  for (int r = 0; r < fit.period; ++r) {
    // First t ≥ t_start in residue class r.
    std::int64_t first = fit.t_start + ((r - fit.t_start % fit.period) % fit.period + fit.period) % fit.period;
    std::vector<std::int64_t> ts;
    std::vector<Rational> ys;
    for (int k = 0; k < total; ++k) {
      std::int64_t t = first + static_cast<std::int64_t>(k) * fit.period;
      ts.push_back(t);
      ys.push_back(value(t));
    }
    std::vector<std::int64_t> fit_ts(ts.begin(), ts.begin() + need);
    std::vector<Rational> fit_ys(ys.begin(), ys.begin() + need);
    auto coeffs = interpolate(fit_ts, fit_ys);
    for (int k = need; k < total; ++k) fit.residual += abs(evaluate_polynomial(coeffs, ts[k]) - ys[k]);
    fit.classes[r] = coeffs;
  }
  for (const auto& [t, y] : values) fit.sample_ts.push_back(t);
  // One polynomial through consecutive points, checked on every sampled t.
  std::vector<std::int64_t> ts;
  std::vector<Rational> ys;
  for (int k = 0; k < need; ++k) {
    ts.push_back(fit.t_start + k);
    ys.push_back(value(fit.t_start + k));
  }
  auto single = interpolate(ts, ys);
  fit.single_polynomial = true;
  for (const auto& [t, y] : values) {
    if (evaluate_polynomial(single, t) != y) fit.single_polynomial = false;
  }
  if (fit.single_polynomial) fit.single = single;
  return fit;
}

inline QuasiPolynomialFit fit_regularity(const RegularityFamily& f, const FitOptions& opt = {}) {
  FamilyModel model(f);
  return fit_regularity(model, opt);
}

}  // namespace tmoebius
