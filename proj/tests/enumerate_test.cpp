#include "tmoebius/enumerate/diagrams.hpp"
#include "tmoebius/enumerate/markings.hpp"
#include "tmoebius/verify/fixtures.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <set>

using namespace tmoebius;
using fixtures::half;

namespace {

// Generate-and-filter: every vertex list with degrees summing to a, every
// multiset of weighted edges of the right size, every placement of the ends;
// keep what validates with the requested invariants.
std::set<std::vector<std::int64_t>> naive_codes(SurfaceKind s, int g, HalfInt a, const Partition& profile) {
  std::set<std::vector<std::int64_t>> out;
  const int two_b = profile.norm();
  const int max_joints = two_b / 2;
  for (int floors = 1; floors <= g; ++floors) {
    for (int grounds = 0; grounds <= floors; ++grounds) {
      const int etages = floors - grounds;
      for (int joints = 0; joints <= max_joints; ++joints) {
        const int V = floors + joints;
        const int E = g - floors + V - 1;
        if (E < 0) continue;
        // Degrees: grounds take doubled values ≥ 1, étages even doubled values ≥ 2.
        std::vector<std::vector<std::int64_t>> degree_lists;
        std::vector<std::int64_t> cur;
        std::function<void(int, std::int64_t)> degs = [&](int i, std::int64_t left) {
          if (i == floors) {
            if (left == 0) degree_lists.push_back(cur);
            return;
          }
          const bool ground = i < grounds;
          for (std::int64_t x = ground ? 1 : 2; x <= left; x += ground ? 1 : 2) {
            cur.push_back(x);
            degs(i + 1, left - x);
            cur.pop_back();
          }
        };
        degs(0, a.doubled());
        std::vector<std::array<int, 3>> slots;
        for (int t = 0; t < V; ++t) {
          for (int h = 0; h < V; ++h) {
            if (t == h) continue;
            for (int w = 1; w <= two_b; ++w) slots.push_back({t, h, w});
          }
        }
        for (const auto& dl : degree_lists) {
          FloorDiagram base;
          for (int i = 0; i < grounds; ++i) base.add_vertex(VertexKind::Ground, half(dl[i]));
          for (int i = 0; i < etages; ++i) base.add_vertex(VertexKind::Etage, half(dl[grounds + i]));
          for (int i = 0; i < joints; ++i) base.add_vertex(VertexKind::Joint);
          std::vector<int> pick;
          std::function<void(std::size_t)> edges = [&](std::size_t start) {
            if (static_cast<int>(pick.size()) == E) {
              FloorDiagram d = base;
              for (int k : pick) d.add_edge(slots[k][0], slots[k][1], slots[k][2]);
              std::function<void(int, FloorDiagram&)> ends = [&](int i, FloorDiagram& x) {
                if (i == profile.length()) {
                  if (validate(x, s).ok() && genus(x) == g) out.insert(canonical_form(x));
                  return;
                }
                for (int v = 0; v < V; ++v) {
                  x.add_end(v, profile.parts()[i]);
                  ends(i + 1, x);
                  x.ends.pop_back();
                }
              };
              ends(0, d);
              return;
            }
            for (std::size_t k = start; k < slots.size(); ++k) {
              pick.push_back(static_cast<int>(k));
              edges(k);
              pick.pop_back();
            }
          };
          edges(0);
        }
      }
    }
  }
  return out;
}

std::set<std::vector<std::int64_t>> enumerated_codes(SurfaceKind s, int g, HalfInt a, const Partition& profile) {
  std::set<std::vector<std::int64_t>> out;
  HomologyClass cls{a, half(profile.norm())};
  for (const auto& d : enumerate_diagrams({s, g, cls, profile})) {
    EXPECT_TRUE(validate(d, s).ok());
    EXPECT_EQ(genus(d), g);
    EXPECT_EQ(homology_class(d), cls);
    EXPECT_EQ(tangency_profile(d), profile);
    EXPECT_TRUE(out.insert(canonical_form(d)).second) << "duplicate diagram";
  }
  return out;
}

struct Case {
  SurfaceKind s;
  int g;
  int two_a;
  const char* profile;
};

}  // namespace

class NaiveEnumeration : public ::testing::TestWithParam<Case> {};

TEST_P(NaiveEnumeration, MatchesGenerateAndFilter) {
  const auto c = GetParam();
  auto profile = Partition::parse(c.profile);
  auto naive = naive_codes(c.s, c.g, half(c.two_a), profile);
  auto fast = enumerated_codes(c.s, c.g, half(c.two_a), profile);
  EXPECT_EQ(naive, fast);
}

INSTANTIATE_TEST_SUITE_P(SmallClasses, NaiveEnumeration,
                         ::testing::Values(Case{SurfaceKind::M0, 1, 2, "1,1"}, Case{SurfaceKind::M0, 1, 3, "2"},
                                           Case{SurfaceKind::M0, 2, 2, "1,1"}, Case{SurfaceKind::M0, 2, 3, "1,1"},
                                           Case{SurfaceKind::M0, 2, 4, "2"}, Case{SurfaceKind::M1, 1, 3, "2,1"},
                                           Case{SurfaceKind::M1, 2, 2, "1,1"}, Case{SurfaceKind::M1, 2, 3, "1"},
                                           Case{SurfaceKind::M1, 2, 1, "2,1"}, Case{SurfaceKind::M0, 3, 2, "1,1"}));

TEST(Enumerate, ReferenceDiagramsAreListed) {
  for (const auto& ref : fixtures::reference_diagrams()) {
    auto list = enumerate_diagrams({ref.surface, ref.genus, ref.cls, ref.profile});
    auto code = canonical_form(ref.diagram);
    bool found = false;
    for (const auto& d : list) found = found || canonical_form(d) == code;
    EXPECT_TRUE(found) << ref.name;
  }
}

TEST(Enumerate, FrozenCountsForReferenceTriples) {
  const std::vector<std::size_t> counts{1, 3, 370, 1, 23, 104};
  auto refs = fixtures::reference_diagrams();
  for (std::size_t i = 0; i < refs.size(); ++i) {
    EXPECT_EQ(enumerate_diagrams({refs[i].surface, refs[i].genus, refs[i].cls, refs[i].profile}).size(), counts[i])
        << refs[i].name;
  }
}

TEST(Enumerate, ParallelMatchesSerial) {
  DiagramQuery q{SurfaceKind::M0, 4, {half(7), half(4)}, Partition::parse("2,1,1")};
  auto a = enumerate_diagrams(q, 1);
  auto b = enumerate_diagrams(q, 4);
  EXPECT_EQ(a, b);
}

TEST(Enumerate, RejectsBadRequests) {
  EXPECT_THROW(enumerate_diagrams({SurfaceKind::M1, 1, {half(1), half(2)}, Partition::parse("1,1")}),
               std::invalid_argument);
  EXPECT_THROW(enumerate_diagrams({SurfaceKind::M0, 1, {half(2), half(2)}, Partition::parse("1")}),
               std::invalid_argument);
  EXPECT_THROW(enumerate_diagrams({SurfaceKind::M0, 0, {half(2), half(2)}, Partition::parse("1,1")}),
               std::invalid_argument);
}

namespace {

// Every injective placement of the labels onto cells, filtered by the
// stand-alone validity check.
std::set<std::vector<std::pair<int, int>>> brute_force_markings(const FloorDiagram& d, const Partition& fixed,
                                                                 const Partition& free) {
  std::vector<Cell> cells;
  for (int v = 0; v < static_cast<int>(d.vertices.size()); ++v) cells.push_back({CellKind::Vertex, v});
  for (int e = 0; e < static_cast<int>(d.edges.size()); ++e) cells.push_back({CellKind::Edge, e});
  for (int e = 0; e < static_cast<int>(d.ends.size()); ++e) cells.push_back({CellKind::End, e});
  const int pts = point_count(free, genus(d));
  const int labels = pts + fixed.length();
  std::set<std::vector<std::pair<int, int>>> out;
  Marking m;
  m.point_labels = pts;
  std::vector<bool> used(cells.size(), false);
  std::function<void()> rec = [&]() {
    if (static_cast<int>(m.placements.size()) == labels) {
      if (is_valid_marking(d, m, fixed)) {
        std::vector<std::pair<int, int>> key;
        for (const auto& c : m.placements) key.push_back({static_cast<int>(c.kind), c.index});
        out.insert(key);
      }
      return;
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      m.placements.push_back(cells[i]);
      rec();
      m.placements.pop_back();
      used[i] = false;
    }
  };
  rec();
  return out;
}

}  // namespace

TEST(Markings, MatchBruteForcePlacements) {
  for (const auto& ref : fixtures::reference_diagrams()) {
    if (ref.genus > 3) continue;
    for (const auto& mu : ref.profile.sub_multisets()) {
      auto nu = ref.profile.minus(mu);
      auto fast = enumerate_markings(ref.diagram, mu, nu);
      std::set<std::vector<std::pair<int, int>>> keys;
      for (const auto& m : fast) {
        EXPECT_TRUE(is_valid_marking(ref.diagram, m, mu)) << ref.name;
        std::vector<std::pair<int, int>> key;
        for (const auto& c : m.placements) key.push_back({static_cast<int>(c.kind), c.index});
        keys.insert(key);
      }
      EXPECT_EQ(keys.size(), fast.size()) << "duplicate markings in " << ref.name;
      EXPECT_EQ(keys, brute_force_markings(ref.diagram, mu, nu)) << ref.name << " mu=" << mu.to_list();
    }
  }
}

TEST(Markings, PatternCountsAgreeWithExplicitMarkings) {
  for (const auto& ref : fixtures::reference_diagrams()) {
    for (const auto& mu : ref.profile.sub_multisets()) {
      auto nu = ref.profile.minus(mu);
      Integer total = 0;
      for (const auto& p : marking_patterns(ref.diagram, mu, nu)) total += p.marking_count();
      EXPECT_EQ(total, Integer(enumerate_markings(ref.diagram, mu, nu).size())) << ref.name;
    }
  }
}

TEST(Markings, RejectsInvalidPlacements) {
  const auto& d = fixtures::ground_double_elevator().diagram;
  Marking m;
  m.point_labels = 4;
  m.placements = {{CellKind::Vertex, 0}, {CellKind::Vertex, 1}, {CellKind::End, 0}, {CellKind::End, 1}};
  std::string why;
  EXPECT_FALSE(is_valid_marking(d, m, &why));
  EXPECT_FALSE(why.empty());
  // A fixed label on an étage.
  Marking f;
  f.point_labels = 3;
  f.placements = {{CellKind::Edge, 0}, {CellKind::Edge, 1}, {CellKind::End, 0}, {CellKind::Vertex, 1}};
  EXPECT_FALSE(is_valid_marking(d, f, &why));
  EXPECT_EQ(why, "fixed label 4 is not on an end");
}
