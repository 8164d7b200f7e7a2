#include "tmoebius/diagram/json_io.hpp"
#include "tmoebius/regularity/extended_graph.hpp"
#include "tmoebius/regularity/fit.hpp"
#include "tmoebius/regularity/path_b.hpp"
#include "tmoebius/verify/acceptance.hpp"
#include "tmoebius/verify/fixtures.hpp"

#include <gtest/gtest.h>

#include <functional>

using namespace tmoebius;
using fixtures::half;

namespace {

// Weightings of a shape by direct search: every bounded edge from 1 to the
// total end weight, then the floor and joint conditions checked by hand.
Integer brute_force_weightings(const FloorDiagram& shape, SurfaceKind s, const std::vector<std::int64_t>& ends) {
  std::int64_t total = 0;
  for (auto e : ends) total += e;
  FloorDiagram d = shape;
  for (std::size_t e = 0; e < ends.size(); ++e) d.ends[e].weight = static_cast<int>(ends[e]);
  Integer count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == d.edges.size()) {
      for (int v = 0; v < static_cast<int>(d.vertices.size()); ++v) {
        const auto& vx = d.vertices[v];
        if (vx.kind == VertexKind::Etage && d.in_weight(v) != d.out_weight(v)) return;
        if (vx.kind == VertexKind::Ground && d.out_weight(v) % 2 != (delta(s) * vx.degree.doubled()) % 2) return;
        if (vx.kind == VertexKind::Joint) {
          auto w = d.adjacent_weights(v);
          if (w[0] != w[1]) return;
        }
      }
      count += 1;
      return;
    }
    for (std::int64_t w = 1; w <= total; ++w) {
      d.edges[i].weight = static_cast<int>(w);
      rec(i + 1);
    }
  };
  rec(0);
  return count;
}

}  // namespace

TEST(ExtendedGraph, MatrixLayout) {
  auto shape = fixtures::two_grounds_parity_shape();
  auto g = build_extended(shape, SurfaceKind::M0);
  EXPECT_EQ(g.rows(), 4 + 2);
  EXPECT_EQ(g.columns(), 3 + 2 + 2);
  EXPECT_EQ(g.column_kind[5], ColumnKind::GroundEdge);
  EXPECT_EQ(g.lower_bound(5), 0);
  EXPECT_EQ(g.lower_bound(0), 1);
  // Ground row: out - 2 e_G.
  EXPECT_EQ(g.A[0][0], 1);
  EXPECT_EQ(g.A[0][5], -2);
  auto d = g.divergence({3, 4});
  EXPECT_EQ(d[4], 3);
  EXPECT_EQ(d[5], 4);
  EXPECT_THROW(g.divergence({1}), std::invalid_argument);
}

TEST(ExtendedGraph, CountsMatchDirectSearch) {
  const std::vector<FloorDiagram> shapes{fixtures::two_grounds_parity_shape(), fixtures::joint_and_ground_parity_shape(),
                                         fixtures::joint_fork_chain_shape()};
  for (const auto& shape : shapes) {
    for (auto s : {SurfaceKind::M0, SurfaceKind::M1}) {
      auto g = build_extended(shape, s);
      for (std::int64_t m1 = 1; m1 <= 5; ++m1) {
        for (std::int64_t m2 = 1; m2 <= 7; ++m2) {
          EXPECT_EQ(count_solutions(g, g.divergence({m1, m2})), brute_force_weightings(shape, s, {m1, m2}))
              << to_json(shape).dump() << " " << m1 << "," << m2;
        }
      }
    }
  }
}

TEST(ExtendedGraph, MonomialSums) {
  // Single étage with one incoming elevator from a ground floor: w_edge = μ.
  FloorDiagram d;
  int g = d.add_vertex(VertexKind::Ground, half(1));
  int f = d.add_vertex(VertexKind::Etage, half(2));
  d.add_edge(g, f);
  d.add_end(f);
  auto eg = build_extended(d, SurfaceKind::M1);
  EXPECT_EQ(count_weightings(eg, eg.divergence({5}), {2, 0, 0}), 25);
  EXPECT_EQ(count_weightings(eg, eg.divergence({4}), {1, 0, 0}), 0);  // odd outflow required on m1
}

TEST(MinorDeterminants, GroundEdgeTreeHasDeterminantTwo) {
  // Ground floor to étage with one end: the full square system.
  FloorDiagram d;
  int g = d.add_vertex(VertexKind::Ground, half(1));
  int f = d.add_vertex(VertexKind::Etage, half(2));
  d.add_edge(g, f);
  d.add_end(f);
  auto eg = build_extended(d, SurfaceKind::M0);
  auto reports = minor_analysis(eg);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_EQ(abs(reports[0].det), 2);
  EXPECT_TRUE(reports[0].structure_ok);
  EXPECT_EQ(reports[0].cokernel, (std::vector<Integer>{2}));
  EXPECT_TRUE(reports[0].cokernel_matches);
}

TEST(MinorDeterminants, TwoGroundComponentsGiveFour) {
  // Two independent e_G-trees inside one minor: |det| = 4, outside {1, 2}.
  auto eg = build_extended(fixtures::two_grounds_parity_shape(), SurfaceKind::M0);
  bool saw_four = false;
  for (const auto& r : minor_analysis(eg)) {
    EXPECT_TRUE(r.det_matches_components);
    if (r.det != 0) {
      EXPECT_TRUE(r.structure_ok);
      EXPECT_TRUE(r.cokernel_matches);
    }
    if (abs(r.det) == 4) {
      saw_four = true;
      EXPECT_FALSE(r.det_in_unit_or_two);
      EXPECT_EQ(r.cokernel, (std::vector<Integer>{2, 2}));
    }
  }
  EXPECT_TRUE(saw_four);
}

TEST(MinorDeterminants, JointCycleParity) {
  // Odd joint cycle: one joint on the cycle J, F1, F2.
  auto eg = build_extended(fixtures::joint_fork_chain_shape(), SurfaceKind::M0);
  for (const auto& r : minor_analysis(eg)) EXPECT_TRUE(r.det_matches_components);
  EXPECT_FALSE(is_totally_unimodular(eg.A));
}

TEST(PathB, AgreesWithDiagramEnumeration) {
  for (auto s : {SurfaceKind::M0, SurfaceKind::M1}) {
    for (int g = 1; g <= 3; ++g) {
      for (int two_a = 1; two_a <= 4; ++two_a) {
        for (int two_b = 1; two_b <= 3; ++two_b) {
          HomologyClass cls{half(two_a), half(two_b)};
          if (!cls.valid_for(s)) continue;
          for (const auto& profile : partitions_of(two_b)) {
            for (const auto& mu : profile.sub_multisets()) {
              InvariantRequest r{s, g, cls, mu, profile.minus(mu)};
              EXPECT_EQ(invariant_via_weightings(r), compute_invariant(r, 1, false).N)
                  << surface_name(s) << " g" << g << " " << cls.to_string() << " mu=" << mu.to_list();
            }
          }
        }
      }
    }
  }
}

TEST(PathB, SeededRequestsAreDeterministic) {
  auto a = random_requests(20, 7);
  auto b = random_requests(20, 7);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].cls, b[i].cls);
    EXPECT_EQ(a[i].fixed, b[i].fixed);
  }
}

TEST(Fit, InterpolationIsExact) {
  std::vector<std::int64_t> ts{0, 1, 2, 3};
  std::vector<Rational> ys;
  for (auto t : ts) ys.push_back(Rational(t * t * t - 2 * t + 5, 2));
  auto c = interpolate(ts, ys);
  EXPECT_EQ(evaluate_polynomial(c, 10), Rational(1000 - 20 + 5, 2));
}

TEST(Fit, GenusOneFamilyIsPolynomial) {
  RegularityFamily f;
  f.name = "genus 1";
  f.surface = SurfaceKind::M0;
  f.genus = 1;
  f.a = half(4);
  f.free = {{1, 1}, {1, 3}};
  FamilyModel model(f);
  auto fit = fit_regularity(model);
  EXPECT_TRUE(fit.ok());
  EXPECT_TRUE(fit.single_polynomial);
  for (std::int64_t t = fit.sample_ts.back() + 1; t <= fit.sample_ts.back() + 10; ++t) {
    EXPECT_EQ(fit.evaluate(t), model.value(t));
  }
}

TEST(Fit, TwoGroundsShapeNeedsParitySplit) {
  RegularityFamily f;
  f.name = "two grounds";
  f.surface = SurfaceKind::M0;
  f.fixed = {{1, 1}, {1, 3}};
  f.shape = fixtures::two_grounds_parity_shape();
  f.genus = genus(*f.shape);
  EXPECT_EQ(f.genus, 4);
  FamilyModel model(f);
  auto fit = fit_regularity(model);
  EXPECT_TRUE(fit.ok());
  EXPECT_FALSE(fit.single_polynomial);
  EXPECT_EQ(fit.period, 2);
  for (std::int64_t t = fit.sample_ts.back() + 1; t <= fit.sample_ts.back() + 20; ++t) {
    EXPECT_EQ(fit.evaluate(t), model.value(t));
  }
}

TEST(Fit, StartBeforeWallIsRejected) {
  RegularityFamily f;
  f.name = "wall";
  f.surface = SurfaceKind::M0;
  f.fixed = {{1, 5}, {1, 0}};
  f.shape = fixtures::joint_fork_chain_shape();
  f.genus = genus(*f.shape);
  FamilyModel model(f);
  ASSERT_GT(model.chamber_start(), 0);
  FitOptions opt;
  opt.t_start = 0;
  EXPECT_THROW(fit_regularity(model, opt), std::domain_error);
}
