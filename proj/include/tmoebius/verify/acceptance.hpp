#pragma once

#include "tmoebius/multiplicity/multiplicity.hpp"
#include "tmoebius/regularity/extended_graph.hpp"
#include "tmoebius/regularity/fit.hpp"
#include "tmoebius/regularity/path_b.hpp"
#include "tmoebius/series/generating.hpp"
#include "tmoebius/verify/fixtures.hpp"

#include <chrono>
#include <functional>
#include <iosfwd>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace tmoebius {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  bool documented_failure = false;  // known to be unattainable as stated; see the README
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;

  bool within_limit() const { return limit_seconds <= 0 || seconds <= limit_seconds; }
  bool ok() const { return passed && within_limit(); }
};

/// Runs a CLI invocation and writes its standard output to the stream.
using CommandRunner = std::function<int(const std::vector<std::string>&, std::ostream&)>;

namespace detail {

inline std::vector<SurfaceKind> both_surfaces() { return {SurfaceKind::M0, SurfaceKind::M1}; }

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

}  // namespace detail

inline CriterionResult criterion_series_identity() {
  CriterionResult r{1, "series identity H = G2(y) - G2(y^2), H0/H1 parts"};
  r.limit_seconds = 1;
  detail::Stopwatch sw;
  const int order = 200;
  Series g2 = eisenstein_G2(order);
  Series h = series_H(order);
  Series diff = g2 - g2.substitute_power(2);
  int bad = 0;
  for (int n = 0; n <= order; ++n) bad += h[n] != diff[n] ? 1 : 0;
  Series h0 = series_H0(order), h1 = series_H1(order);
  int parts_bad = 0;
  for (int n = 0; n <= order; ++n) {
    parts_bad += h0[n] != h.even_part()[n] ? 1 : 0;
    parts_bad += h1[n] != h.odd_part()[n] ? 1 : 0;
    parts_bad += (h0 + h1)[n] != h[n] ? 1 : 0;
  }
  r.seconds = sw.seconds();
  r.passed = bad == 0 && parts_bad == 0;
  r.detail = std::to_string(order + 1) + " coefficients, " + std::to_string(bad) + " identity mismatches, " +
             std::to_string(parts_bad) + " parity-part mismatches";
  return r;
}

inline CriterionResult criterion_q_specialization(int jobs) {
  CriterionResult r{2, "refined invariant at q=1 equals N, symmetric in q <-> 1/q"};
  r.limit_seconds = 300;
  detail::Stopwatch sw;
  int cases = 0, bad_value = 0, bad_symmetry = 0;
  for (auto s : detail::both_surfaces()) {
    for (int g = 1; g <= 3; ++g) {
      for (int two_a = 1; two_a <= 6; ++two_a) {
        for (int two_b = 1; two_b <= 4; ++two_b) {
          HomologyClass cls{HalfInt::from_doubled(two_a), HalfInt::from_doubled(two_b)};
          if (!cls.valid_for(s)) continue;
          for (const auto& profile : partitions_of(two_b)) {
            for (const auto& fixed : profile.sub_multisets()) {
              for (auto c : {ExponentConvention::ValMinusOne, ExponentConvention::Val}) {
                InvariantRequest req{s, g, cls, fixed, profile.minus(fixed), c};
                auto res = compute_invariant(req, jobs, true);
                ++cases;
                if (res.BG.evaluate_at_one() != res.N) ++bad_value;
                if (!res.BG.is_palindromic()) ++bad_symmetry;
              }
            }
          }
        }
      }
    }
  }
  r.seconds = sw.seconds();
  r.passed = bad_value == 0 && bad_symmetry == 0;
  r.detail = std::to_string(cases) + " requests (both conventions), " + std::to_string(bad_value) +
             " value mismatches, " + std::to_string(bad_symmetry) + " asymmetric";
  return r;
}

inline CriterionResult criterion_genus1_calibration(int jobs) {
  CriterionResult r{3, "genus-1 calibration against (2a)^{2b}(s~(2a) + [a,b int] s(a))"};
  r.limit_seconds = 60;
  r.documented_failure = true;
  detail::Stopwatch sw;
  int points = 0;
  std::map<ExponentConvention, int> matches, undivided_matches;
  bool ratio_is_a = true;
  for (auto s : detail::both_surfaces()) {
    for (int two_a = 1; two_a <= 6; ++two_a) {
      for (int two_b = 1; two_b <= 4; ++two_b) {
        HomologyClass cls{HalfInt::from_doubled(two_a), HalfInt::from_doubled(two_b)};
        if (!cls.valid_for(s)) continue;
        ++points;
        Rational formula(genus1_formula(s, cls.a, cls.b));
        for (auto c : {ExponentConvention::ValMinusOne, ExponentConvention::Val}) {
          InvariantRequest req{s, 1, cls, Partition(), Partition(std::vector<int>(two_b, 1)), c};
          Rational n = compute_invariant(req, jobs, false).N;
          if (n == formula) ++matches[c];
          // Second reading: per-diagram contributions not divided by |Aut|.
          Rational undivided = 0;
          for (const auto& d : enumerate_diagrams({s, 1, cls, req.free}, jobs)) {
            undivided += diagram_contribution(d, req.fixed, req.free, c, false).N * Rational(aut_order(d));
          }
          if (undivided == formula) ++undivided_matches[c];
          if (c == ExponentConvention::ValMinusOne && (n == 0 || formula / n != cls.a.to_rational())) {
            ratio_is_a = false;
          }
        }
      }
    }
  }
  r.seconds = sw.seconds();
  const int m1 = matches[ExponentConvention::ValMinusOne], m2 = matches[ExponentConvention::Val];
  r.passed = (m1 == points) != (m2 == points);
  std::ostringstream os;
  os << points << " grid points; val-1 matches " << m1 << ", val matches " << m2 << ".";
  if (ratio_is_a) os << " Under val-1 the formula equals a*N at every point;";
  os << " val rescales each etage by a and each ground floor by 2a, which matches the etage term"
        " but doubles the ground-floor term.";
  os << " Without the 1/|Aut| division: val-1 matches " << undivided_matches[ExponentConvention::ValMinusOne]
     << ", val matches " << undivided_matches[ExponentConvention::Val] << ".";
  if (r.passed) os << " Calibrated convention: " << (m1 == points ? "val-1" : "val") << ".";
  r.detail = os.str();
  return r;
}

inline CriterionResult criterion_reference_diagrams(int jobs) {
  CriterionResult r{4, "reference diagrams and genus-2 catalogue"};
  r.limit_seconds = 60;
  detail::Stopwatch sw;
  std::ostringstream os;
  bool ok = true;
  for (const auto& ref : fixtures::reference_diagrams()) {
    const auto& d = ref.diagram;
    bool valid = validate(d, ref.surface).ok();
    bool triple = genus(d) == ref.genus && homology_class(d) == ref.cls && tangency_profile(d) == ref.profile;
    auto found = enumerate_diagrams({ref.surface, ref.genus, ref.cls, ref.profile}, jobs);
    auto code = canonical_form(d);
    bool listed = std::any_of(found.begin(), found.end(), [&](const FloorDiagram& x) { return canonical_form(x) == code; });
    ok = ok && valid && triple && listed;
    os << ref.name << (valid && triple && listed ? " ok" : " MISMATCH") << " (" << found.size() << " diagrams); ";
  }
  // Genus-2 shapes with all ends of weight 1.
  std::set<std::vector<std::int64_t>> drawn;
  std::set<std::vector<std::int64_t>> seen_drawn;
  for (const auto& c : {fixtures::core_joint_loop(), fixtures::core_joint_fork(), fixtures::core_ground_edge()}) {
    drawn.insert(canonical_form(c));
  }
  const auto chain = canonical_form(fixtures::core_etage_chain());
  int shapes = 0, unclassified = 0, stray = 0, chains = 0;
  for (auto s : detail::both_surfaces()) {
    for (int two_b = 1; two_b <= 4; ++two_b) {
      if (delta(s) == 0 && two_b % 2 != 0) continue;
      for (const auto& shape : enumerate_shapes(s, 2, HalfInt::from_doubled(two_b), Partition(std::vector<int>(two_b, 1)), jobs)) {
        ++shapes;
        if (fixtures::genus2_class(shape) == fixtures::Genus2Class::None) ++unclassified;
        auto core = canonical_form(fixtures::bare_core(shape));
        if (drawn.count(core)) {
          seen_drawn.insert(core);
        } else if (core == chain) {
          ++chains;
        } else {
          ++stray;
        }
      }
    }
  }
  bool catalogue = unclassified == 0 && stray == 0 && seen_drawn.size() == drawn.size();
  ok = ok && catalogue;
  os << "genus 2: " << shapes << " shapes, " << unclassified << " outside the three floor compositions, "
     << seen_drawn.size() << "/" << drawn.size() << " drawn cores found, " << chains
     << " with an undrawn etage-to-etage core";
  r.seconds = sw.seconds();
  r.passed = ok;
  r.detail = os.str();
  return r;
}

/// Shapes with at most 3 floors, 2 joints and 4 ends, degrees set to the
/// smallest admissible values, whose extended graph has at most 12 columns.
inline std::vector<ExtendedGraph> minor_test_graphs() {
  std::vector<ExtendedGraph> out;
  std::set<std::vector<std::int64_t>> seen;
  for (int g = 1; g <= 4; ++g) {
    for (int ends = 1; ends <= 4; ++ends) {
      TopologyBounds tb{g, ends, 2, 3};
      for (const auto& t : enumerate_topologies(tb)) {
        if (!seen.insert(canonical_form(t)).second) continue;
        FloorDiagram d = t;
        for (auto& v : d.vertices) {
          if (v.kind == VertexKind::Ground) v.degree = HalfInt::from_doubled(1);
          if (v.kind == VertexKind::Etage) v.degree = HalfInt::from_integer(1);
        }
        auto eg = build_extended(d, SurfaceKind::M0);
        if (eg.columns() <= 12) out.push_back(std::move(eg));
      }
    }
  }
  return out;
}

inline CriterionResult criterion_minor_determinants(int jobs) {
  CriterionResult r{5, "square minors: det in {+-1,+-2}, classification, cokernel"};
  r.limit_seconds = 600;
  r.documented_failure = true;
  detail::Stopwatch sw;
  auto graphs = minor_test_graphs();
  struct Tally {
    long minors = 0, nonzero = 0, det_out = 0, structure_bad = 0, cokernel_bad = 0, rule_bad = 0;
  };
  auto tallies = parallel_map(graphs, jobs, [](const ExtendedGraph& g) {
    Tally t;
    for (const auto& m : minor_analysis(g)) {
      ++t.minors;
      if (m.det == 0) {
        if (!m.det_matches_components) ++t.rule_bad;
        continue;
      }
      ++t.nonzero;
      if (!m.det_in_unit_or_two) ++t.det_out;
      if (!m.structure_ok) ++t.structure_bad;
      if (!m.cokernel_matches) ++t.cokernel_bad;
      if (!m.det_matches_components) ++t.rule_bad;
    }
    return t;
  });
  Tally sum;
  for (const auto& t : tallies) {
    sum.minors += t.minors;
    sum.nonzero += t.nonzero;
    sum.det_out += t.det_out;
    sum.structure_bad += t.structure_bad;
    sum.cokernel_bad += t.cokernel_bad;
    sum.rule_bad += t.rule_bad;
  }
  r.seconds = sw.seconds();
  r.passed = sum.det_out == 0 && sum.structure_bad == 0 && sum.cokernel_bad == 0;
  std::ostringstream os;
  os << graphs.size() << " extended graphs, " << sum.minors << " square minors, " << sum.nonzero << " nonzero; "
     << sum.det_out << " with |det| outside {1,2}; " << sum.structure_bad << " classification failures; "
     << sum.cokernel_bad << " cokernel mismatches; " << sum.rule_bad
     << " violations of |det| = 2^(components), det = 0 iff some even-joint cycle";
  r.detail = os.str();
  return r;
}

inline CriterionResult criterion_quasimodular(int jobs) {
  CriterionResult r{6, "per-shape factorization and quasi-modular span"};
  r.limit_seconds = 600;
  detail::Stopwatch sw;
  const int order = 20;
  int shapes = 0, shape_bad = 0, series_count = 0, assembled_bad = 0, span_bad = 0;
  for (auto s : detail::both_surfaces()) {
    for (int g = 1; g <= 3; ++g) {
      for (int two_b = 1; two_b <= 4; ++two_b) {
        for (const auto& profile : partitions_of(two_b)) {
          for (const auto& fixed : profile.sub_multisets()) {
            SeriesRequest req{s, g, HalfInt::from_doubled(two_b), fixed, profile.minus(fixed),
                              HalfInt::from_doubled(order)};
            auto dec = decompose(req, jobs);
            auto checks = parallel_map(dec.shapes, jobs, [&](const FloorDiagram& shape) {
              auto direct = per_diagram_series(shape, s, req.fixed, req.free, order, req.convention);
              auto fact = factorized_form(shape, s, req.fixed, req.free, req.convention).series(order);
              for (int n = 0; n <= order; ++n) {
                if (direct[n] != fact[n]) return false;
              }
              return true;
            });
            Series assembled(order);
            for (const auto& f : dec.factorizations) assembled = assembled + f.series(order);
            for (bool c : checks) shape_bad += c ? 0 : 1;
            shapes += static_cast<int>(checks.size());
            ++series_count;
            auto F = generating_series(req, jobs);
            for (int n = 0; n <= order; ++n) {
              if (F[n] != assembled[n]) {
                ++assembled_bad;
                break;
              }
            }
            std::vector<Series> gens;
            for (const auto& m : dec.monomials) gens.push_back(monomial_series(m, order));
            if (!quasimodular_span_check(F, gens, order).ok) ++span_bad;
          }
        }
      }
    }
  }
  r.seconds = sw.seconds();
  r.passed = shape_bad == 0 && assembled_bad == 0 && span_bad == 0;
  std::ostringstream os;
  os << shapes << " shapes (g <= 3, 2b <= 4, both surfaces), " << shape_bad << " factorization mismatches to y^"
     << order << "; " << series_count << " generating series, " << assembled_bad << " differ from the sum of factorizations, "
     << span_bad << " outside the generator span";
  r.detail = os.str();
  return r;
}

/// The families used for the regularity criterion and what each must show.
struct RegularityCase {
  RegularityFamily family;
  bool expect_single;
};

inline std::vector<RegularityCase> regularity_cases() {
  using fixtures::half;
  std::vector<RegularityCase> out;
  auto whole = [](std::string name, SurfaceKind s, int g, HalfInt a, Ray fixed, Ray free) {
    RegularityFamily f;
    f.name = std::move(name);
    f.surface = s;
    f.genus = g;
    f.a = a;
    f.fixed = std::move(fixed);
    f.free = std::move(free);
    return f;
  };
  out.push_back({whole("genus 1, m0, a=2, nu=(1,1)+t(1,3)", SurfaceKind::M0, 1, half(4), {}, {{1, 1}, {1, 3}}), true});
  out.push_back({whole("genus 1, m1, a=3/2, nu=(1,2)+t(1,3)", SurfaceKind::M1, 1, half(3), {}, {{1, 2}, {1, 3}}), true});
  out.push_back({whole("genus 2, m0, a=1, nu=(1,1)+t(1,3)", SurfaceKind::M0, 2, half(2), {}, {{1, 1}, {1, 3}}), true});
  out.push_back({whole("genus 2, m1, a=1, nu=(1,1)+t(1,3)", SurfaceKind::M1, 2, half(2), {}, {{1, 1}, {1, 3}}), true});
  out.push_back({whole("genus 2, m0, a=3/2, mu=(1)+t(1), nu=(1)+t(1)", SurfaceKind::M0, 2, half(3), {{1}, {1}}, {{1}, {1}}), true});
  out.push_back({whole("one end, genus 3, m0, a=1, mu=(2)+t(2)", SurfaceKind::M0, 3, half(2), {{2}, {2}}, {}), true});
  out.push_back({whole("one end, genus 2, m1, a=3/2, mu=(1)+t(2)", SurfaceKind::M1, 2, half(3), {{1}, {2}}, {}), true});
  auto shape = [](std::string name, SurfaceKind s, FloorDiagram d) {
    RegularityFamily f;
    f.name = std::move(name);
    f.surface = s;
    f.genus = genus(d);
    f.a = homology_class(d).a;
    f.fixed = {{1, 1}, {1, 3}};
    f.shape = std::move(d);
    return f;
  };
  out.push_back({shape("two ground floors, m0, mu=(1,1)+t(1,3)", SurfaceKind::M0, fixtures::two_grounds_parity_shape()), false});
  out.push_back({shape("joint loop and ground floor, m0, mu=(1,1)+t(1,3)", SurfaceKind::M0,
                       fixtures::joint_and_ground_parity_shape()),
                 false});
  out.push_back({shape("joint fork, m0, mu=(1,1)+t(1,3)", SurfaceKind::M0, fixtures::joint_fork_chain_shape()), true});
  return out;
}

inline CriterionResult criterion_regularity(int fresh_points = 100) {
  CriterionResult r{7, "regularity: polynomial / mod-2 quasi-polynomial fits"};
  r.limit_seconds = 600;
  detail::Stopwatch sw;
  std::ostringstream os;
  bool ok = true;
  for (const auto& c : regularity_cases()) {
    FamilyModel model(c.family);
    auto fit = fit_regularity(model);
    int bad = 0;
    const std::int64_t last = fit.sample_ts.back();
    for (int k = 1; k <= fresh_points; ++k) bad += fit.evaluate(last + k) != model.value(last + k) ? 1 : 0;
    bool good = fit.ok() && fit.single_polynomial == c.expect_single && bad == 0;
    ok = ok && good;
    os << c.family.name << ": " << (fit.single_polynomial ? "single polynomial" : "mod-2 split") << ", degree <= "
       << fit.degree_bound << ", " << bad << "/" << fresh_points << " fresh mismatches" << (good ? "" : " UNEXPECTED")
       << "; ";
  }
  r.seconds = sw.seconds();
  r.passed = ok;
  r.detail = os.str();
  r.detail.resize(r.detail.size() - 2);
  return r;
}

/// Seeded desk-scale requests for the cross-path comparison.
inline std::vector<InvariantRequest> random_requests(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<InvariantRequest> out;
  while (static_cast<int>(out.size()) < count) {
    InvariantRequest r;
    r.surface = rng() % 2 ? SurfaceKind::M1 : SurfaceKind::M0;
    r.genus = 1 + static_cast<int>(rng() % 3);
    r.cls = {HalfInt::from_doubled(1 + rng() % 5), HalfInt::from_doubled(1 + rng() % 4)};
    if (!r.cls.valid_for(r.surface)) continue;
    auto profiles = partitions_of(static_cast<int>(r.cls.b.doubled()));
    auto profile = profiles[rng() % profiles.size()];
    auto subs = profile.sub_multisets();
    r.fixed = subs[rng() % subs.size()];
    r.free = profile.minus(r.fixed);
    r.convention = rng() % 2 ? ExponentConvention::Val : ExponentConvention::ValMinusOne;
    out.push_back(r);
  }
  return out;
}

inline CriterionResult criterion_cross_path(int jobs) {
  CriterionResult r{8, "diagram enumeration equals weighting counts"};
  detail::Stopwatch sw;
  auto requests = random_requests(20, 20240611);
  auto pairs = parallel_map(requests, 1, [&](const InvariantRequest& q) {
    return std::make_pair(compute_invariant(q, jobs, false).N, invariant_via_weightings(q));
  });
  int bad = 0, nonzero = 0;
  for (const auto& [a, b] : pairs) {
    bad += a != b ? 1 : 0;
    nonzero += a != 0 ? 1 : 0;
  }
  r.seconds = sw.seconds();
  r.passed = bad == 0;
  r.detail = std::to_string(requests.size()) + " seeded requests (" + std::to_string(nonzero) + " nonzero), " +
             std::to_string(bad) + " mismatches";
  return r;
}

/// Invocations covering every subcommand.
inline std::vector<std::vector<std::string>> determinism_invocations() {
  return {
      {"diagrams", "--surface", "m0", "--genus", "3", "--a", "3/2", "--b", "1", "--nu", "1,1"},
      {"diagrams", "--surface", "m1", "--genus", "2", "--a", "2", "--b", "2", "--nu", "2,1,1", "--format", "csv"},
      {"markings", "--surface", "m0", "--genus", "2", "--a", "1", "--b", "1", "--nu", "1,1"},
      {"invariant", "--surface", "m0", "--genus", "2", "--a", "2", "--b", "2", "--mu", "2", "--nu", "1,1"},
      {"invariant", "--surface", "m1", "--genus", "3", "--a", "3/2", "--b", "3/2", "--nu", "2,1", "--method", "weightings"},
      {"bg", "--surface", "m1", "--genus", "2", "--a", "3/2", "--b", "3/2", "--nu", "1,1,1"},
      {"series", "--surface", "m0", "--genus", "2", "--b", "1", "--nu", "1,1", "--order", "12"},
      {"regularity", "--surface", "m0", "--genus", "2", "--a", "1", "--nu", "1,1", "--nu-dir", "1,3"},
      {"verify", "--suite", "1"},
  };
}

inline CriterionResult criterion_determinism(const CommandRunner& run) {
  CriterionResult r{9, "byte-identical output across 1, 4 and 8 workers"};
  detail::Stopwatch sw;
  int differing = 0, failed = 0;
  std::ostringstream os;
  for (const auto& args : determinism_invocations()) {
    std::vector<std::string> outputs;
    for (const char* jobs : {"1", "4", "8"}) {
      auto a = args;
      a.push_back("--jobs");
      a.push_back(jobs);
      std::ostringstream out;
      if (run(a, out) != 0) ++failed;
      outputs.push_back(out.str());
    }
    if (outputs[0] != outputs[1] || outputs[0] != outputs[2]) {
      ++differing;
      os << args.front() << " differs; ";
    }
  }
  r.seconds = sw.seconds();
  r.passed = differing == 0 && failed == 0;
  os << determinism_invocations().size() << " invocations x 3 worker counts, " << differing << " differing, " << failed
     << " nonzero exits";
  r.detail = os.str();
  return r;
}

inline std::string criterion_line(const CriterionResult& r) {
  std::ostringstream os;
  os << "[" << (r.ok() ? "PASS" : "FAIL") << "] " << r.id << ". " << r.title;
  if (!r.within_limit()) os << " (time limit exceeded)";
  if (!r.ok() && r.documented_failure) os << " (documented)";
  os << " :: " << r.detail;
  return os.str();
}

/// Runs the selected criteria (1..9) in order.
inline std::vector<CriterionResult> run_acceptance(const std::set<int>& which, int jobs, const CommandRunner& run) {
  std::vector<CriterionResult> out;
  for (int id : which) {
    switch (id) {
      case 1: out.push_back(criterion_series_identity()); break;
      case 2: out.push_back(criterion_q_specialization(jobs)); break;
      case 3: out.push_back(criterion_genus1_calibration(jobs)); break;
      case 4: out.push_back(criterion_reference_diagrams(jobs)); break;
      case 5: out.push_back(criterion_minor_determinants(jobs)); break;
      case 6: out.push_back(criterion_quasimodular(jobs)); break;
      case 7: out.push_back(criterion_regularity()); break;
      case 8: out.push_back(criterion_cross_path(jobs)); break;
      case 9: out.push_back(criterion_determinism(run)); break;
      default: throw std::invalid_argument("no acceptance criterion " + std::to_string(id));
    }
  }
  return out;
}

}  // namespace tmoebius
