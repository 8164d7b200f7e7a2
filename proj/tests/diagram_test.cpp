#include "tmoebius/diagram/canonical.hpp"
#include "tmoebius/diagram/json_io.hpp"
#include "tmoebius/verify/fixtures.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace tmoebius;
using fixtures::half;

namespace {

bool has_condition(const ValidationReport& r, const std::string& cond) {
  for (const auto* list : {&r.structural, &r.violations}) {
    for (const auto& v : *list) {
      if (v.condition == cond) return true;
    }
  }
  return false;
}

// Relabels vertices by perm (new index of old vertex v is perm[v]) and
// reverses the edge and end lists.
FloorDiagram relabel(const FloorDiagram& d, const std::vector<int>& perm) {
  FloorDiagram r;
  r.vertices.resize(d.vertices.size());
  for (std::size_t v = 0; v < d.vertices.size(); ++v) r.vertices[perm[v]] = d.vertices[v];
  for (auto it = d.edges.rbegin(); it != d.edges.rend(); ++it) r.add_edge(perm[it->tail], perm[it->head], it->weight);
  for (auto it = d.ends.rbegin(); it != d.ends.rend(); ++it) r.add_end(perm[it->source], it->weight);
  return r;
}

// |Aut| by brute force: vertex permutations preserving kind, degree, edges
// and ends as multisets, times the permutations of identical parallel
// edges and identical ends.
Integer brute_force_aut(const FloorDiagram& d) {
  const int n = static_cast<int>(d.vertices.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  using Key = std::vector<std::int64_t>;
  auto edge_keys = [](const FloorDiagram& x) {
    std::vector<Key> k;
    for (const auto& e : x.edges) k.push_back({e.tail, e.head, e.weight});
    for (const auto& e : x.ends) k.push_back({-1, e.source, e.weight});
    std::sort(k.begin(), k.end());
    return k;
  };
  const auto base = edge_keys(d);
  Integer vertex_maps = 0;
  do {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) {
      ok = d.vertices[v].kind == d.vertices[perm[v]].kind && d.vertices[v].degree == d.vertices[perm[v]].degree;
    }
    if (ok && edge_keys(relabel(d, perm)) == base) vertex_maps += 1;
  } while (std::next_permutation(perm.begin(), perm.end()));
  Integer parallel = 1;
  for (std::size_t i = 0; i < base.size();) {
    std::size_t j = i;
    while (j < base.size() && base[j] == base[i]) ++j;
    parallel *= factorial(static_cast<long>(j - i));
    i = j;
  }
  return vertex_maps * parallel;
}

}  // namespace

TEST(Validate, ReferenceDiagramsAreValid) {
  for (const auto& ref : fixtures::reference_diagrams()) {
    auto rep = validate(ref.diagram, ref.surface);
    EXPECT_TRUE(rep.ok()) << ref.name << ": " << rep.to_string();
    EXPECT_EQ(genus(ref.diagram), ref.genus) << ref.name;
    EXPECT_EQ(homology_class(ref.diagram), ref.cls) << ref.name;
    EXPECT_EQ(tangency_profile(ref.diagram), ref.profile) << ref.name;
  }
}

TEST(Validate, GroundParityIsConditionA) {
  // Ground floor 1/2 with outgoing weight 1 on m0: 1 is not 0 mod 2.
  FloorDiagram d;
  int g = d.add_vertex(VertexKind::Ground, half(1));
  int f = d.add_vertex(VertexKind::Etage, half(2));
  d.add_edge(g, f, 1);
  d.add_end(f, 1);
  EXPECT_TRUE(has_condition(validate(d, SurfaceKind::M0), "A"));
  EXPECT_TRUE(validate(d, SurfaceKind::M1).ok());
}

TEST(Validate, GroundWithIncomingEdge) {
  FloorDiagram d;
  int f = d.add_vertex(VertexKind::Etage, half(2));
  int g = d.add_vertex(VertexKind::Ground, half(1));
  int j = d.add_vertex(VertexKind::Joint);
  d.add_edge(j, f, 1);
  d.add_edge(j, g, 1);
  d.add_edge(g, f, 2);
  d.add_end(f, 3);
  EXPECT_TRUE(has_condition(validate(d, SurfaceKind::M1), "A"));
}

TEST(Validate, EtageBalanceIsConditionB) {
  auto d = fixtures::ground_double_elevator().diagram;
  d.ends[0].weight = 2;
  EXPECT_TRUE(has_condition(validate(d, SurfaceKind::M0), "B"));
}

TEST(Validate, JointWeightsIsConditionC) {
  auto d = fixtures::joint_double_elevator().diagram;
  d.edges[0].weight = 2;
  d.ends[0].weight = 2;
  auto rep = validate(d, SurfaceKind::M1);
  EXPECT_TRUE(has_condition(rep, "C")) << rep.to_string();
}

TEST(Validate, StructuralProblems) {
  FloorDiagram d;
  int f = d.add_vertex(VertexKind::Etage, half(2));
  d.add_edge(f, 7, 1);
  EXPECT_TRUE(has_condition(validate(d, SurfaceKind::M0), "structure"));

  FloorDiagram loop;
  int a = loop.add_vertex(VertexKind::Etage, half(2));
  loop.add_edge(a, a, 1);
  loop.add_end(a, 1);
  EXPECT_TRUE(has_condition(validate(loop, SurfaceKind::M0), "structure"));

  FloorDiagram cyc;
  int g = cyc.add_vertex(VertexKind::Ground, half(1));
  int f1 = cyc.add_vertex(VertexKind::Etage, half(2));
  int f2 = cyc.add_vertex(VertexKind::Etage, half(2));
  cyc.add_edge(g, f1, 1);
  cyc.add_edge(f1, f2, 1);
  cyc.add_edge(f2, f1, 1);
  cyc.add_end(f2, 1);
  EXPECT_TRUE(has_condition(validate(cyc, SurfaceKind::M1), "acyclic"));

  FloorDiagram none;
  none.add_vertex(VertexKind::Ground, half(1));
  EXPECT_TRUE(has_condition(validate(none, SurfaceKind::M1), "ends"));
}

TEST(Canonical, InvariantUnderRelabeling) {
  for (const auto& ref : fixtures::reference_diagrams()) {
    const auto& d = ref.diagram;
    std::vector<int> perm(d.vertices.size());
    std::iota(perm.begin(), perm.end(), 0);
    const auto code = canonical_form(d);
    int tried = 0;
    do {
      EXPECT_EQ(canonical_form(relabel(d, perm)), code) << ref.name;
      if (++tried > 30) break;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST(Canonical, DistinguishesDifferentDiagrams) {
  auto refs = fixtures::reference_diagrams();
  for (std::size_t i = 0; i < refs.size(); ++i) {
    for (std::size_t j = i + 1; j < refs.size(); ++j) {
      EXPECT_FALSE(isomorphic(refs[i].diagram, refs[j].diagram)) << refs[i].name << " " << refs[j].name;
    }
  }
  auto a = fixtures::ground_joint_etage_chain().diagram;
  auto b = a;
  std::swap(b.ends[1].weight, b.ends[2].weight);
  EXPECT_TRUE(isomorphic(a, b));
  b.edges[3].weight = 1;
  EXPECT_FALSE(isomorphic(a, b));
}

TEST(Canonical, AutomorphismsMatchBruteForce) {
  for (const auto& ref : fixtures::reference_diagrams()) {
    EXPECT_EQ(aut_order(ref.diagram), brute_force_aut(ref.diagram)) << ref.name;
  }
  // Frozen: two parallel elevators times two equal ends.
  EXPECT_EQ(aut_order(fixtures::ground_double_elevator().diagram), 4);
  EXPECT_EQ(aut_order(fixtures::ground_and_joint_into_etage().diagram), 8);
  EXPECT_EQ(aut_order(fixtures::ground_joint_etage_chain().diagram), 1);
}

TEST(Json, RoundTrip) {
  for (const auto& ref : fixtures::reference_diagrams()) {
    auto text = to_json(ref.diagram, ref.surface).dump();
    auto doc = diagram_from_string(text);
    ASSERT_TRUE(doc.surface.has_value());
    EXPECT_EQ(*doc.surface, ref.surface);
    EXPECT_EQ(doc.diagram, ref.diagram) << ref.name;
  }
}

TEST(Json, AcceptsStringIdsAndReportsErrors) {
  auto doc = diagram_from_string(R"({"vertices":[{"id":"g","kind":"ground","degree":"1/2"},
    {"id":"f","kind":"etage","degree":1}],
    "edges":[{"tail":"g","head":"f","weight":1},{"tail":"g","head":"f","weight":1}],
    "ends":[{"source":"f","weight":1},{"source":"f","weight":1}]})");
  EXPECT_TRUE(isomorphic(doc.diagram, fixtures::ground_double_elevator().diagram));
  EXPECT_THROW(diagram_from_string("{"), std::invalid_argument);
  EXPECT_THROW(diagram_from_string(R"({"vertices":[{"kind":"roof"}]})"), std::invalid_argument);
  auto dangling = diagram_from_string(R"({"vertices":[{"id":0,"kind":"etage","degree":1}],
    "edges":[{"tail":0,"head":5,"weight":1}],"ends":[{"source":0,"weight":1}]})");
  EXPECT_TRUE(has_condition(validate(dangling.diagram, SurfaceKind::M0), "structure"));
}
