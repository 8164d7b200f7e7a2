#pragma once

#include "tmoebius/diagram/canonical.hpp"
#include "tmoebius/diagram/floor_diagram.hpp"

#include <string>
#include <vector>

namespace tmoebius::fixtures {

inline HalfInt half(std::int64_t doubled) { return HalfInt::from_doubled(doubled); }

/// A reference diagram with its stated genus, class and tangency profile.
struct ReferenceDiagram {
  std::string name;
  SurfaceKind surface;
  int genus;
  HomologyClass cls;
  Partition profile;
  FloorDiagram diagram;
};

/// Ground floor ½ with a double elevator into an étage of degree 1, two ends.
inline ReferenceDiagram ground_double_elevator() {
  FloorDiagram d;
  int g = d.add_vertex(VertexKind::Ground, half(1));
  int f = d.add_vertex(VertexKind::Etage, half(2));
  d.add_edge(g, f, 1);
  d.add_edge(g, f, 1);
  d.add_end(f, 1);
  d.add_end(f, 1);
  return {"ground_double_elevator", SurfaceKind::M0, 3, {half(3), half(2)}, Partition({1, 1}), d};
}

/// Ground floor and a joint, each doubly linked to one étage with ends 2, 1, 1.
inline ReferenceDiagram ground_and_joint_into_etage() {
  FloorDiagram d;
  int g = d.add_vertex(VertexKind::Ground, half(1));
  int j = d.add_vertex(VertexKind::Joint);
  int f = d.add_vertex(VertexKind::Etage, half(2));
  d.add_edge(g, f, 1);
  d.add_edge(g, f, 1);
  d.add_edge(j, f, 1);
  d.add_edge(j, f, 1);
  d.add_end(f, 2);
  d.add_end(f, 1);
  d.add_end(f, 1);
  return {"ground_and_joint_into_etage", SurfaceKind::M0, 4, {half(3), half(4)}, Partition({2, 1, 1}), d};
}

/// Ground floor with its own end, a joint, and a chain of étages 2 → 1.
inline ReferenceDiagram ground_joint_etage_chain() {
  FloorDiagram d;
  int g = d.add_vertex(VertexKind::Ground, half(1));
  int j = d.add_vertex(VertexKind::Joint);
  int f2 = d.add_vertex(VertexKind::Etage, half(4));
  int f1 = d.add_vertex(VertexKind::Etage, half(2));
  d.add_end(g, 1);
  d.add_edge(g, f2, 1);
  d.add_edge(j, f2, 1);
  d.add_edge(j, f1, 1);
  d.add_edge(f2, f1, 2);
  d.add_end(f1, 1);
  d.add_end(f1, 2);
  return {"ground_joint_etage_chain", SurfaceKind::M0, 4, {half(7), half(4)}, Partition({2, 1, 1}), d};
}

/// A joint doubly linked to a single étage.
inline ReferenceDiagram joint_double_elevator() {
  FloorDiagram d;
  int j = d.add_vertex(VertexKind::Joint);
  int f = d.add_vertex(VertexKind::Etage, half(2));
  d.add_edge(j, f, 1);
  d.add_edge(j, f, 1);
  d.add_end(f, 1);
  d.add_end(f, 1);
  return {"joint_double_elevator", SurfaceKind::M1, 2, {half(2), half(2)}, Partition({1, 1}), d};
}

/// Two ground floors and a joint feeding one étage with ends 3, 1.
inline ReferenceDiagram two_grounds_and_joint_into_etage() {
  FloorDiagram d;
  int g0 = d.add_vertex(VertexKind::Ground, half(1));
  int g1 = d.add_vertex(VertexKind::Ground, half(1));
  int j = d.add_vertex(VertexKind::Joint);
  int f = d.add_vertex(VertexKind::Etage, half(2));
  d.add_edge(g0, f, 1);
  d.add_edge(g1, f, 1);
  d.add_edge(j, f, 1);
  d.add_edge(j, f, 1);
  d.add_end(f, 3);
  d.add_end(f, 1);
  return {"two_grounds_and_joint_into_etage", SurfaceKind::M1, 4, {half(4), half(4)}, Partition({3, 1}), d};
}

/// Ground floor, joint and étage chain 2 → 1 with ends 2, 1.
inline ReferenceDiagram ground_joint_etage_chain_m1() {
  FloorDiagram d;
  int g = d.add_vertex(VertexKind::Ground, half(1));
  int j = d.add_vertex(VertexKind::Joint);
  int f2 = d.add_vertex(VertexKind::Etage, half(4));
  int f1 = d.add_vertex(VertexKind::Etage, half(2));
  d.add_edge(g, f2, 1);
  d.add_edge(j, f2, 1);
  d.add_edge(j, f1, 1);
  d.add_edge(f2, f1, 2);
  d.add_end(f1, 2);
  d.add_end(f1, 1);
  return {"ground_joint_etage_chain_m1", SurfaceKind::M1, 4, {half(7), half(3)}, Partition({2, 1}), d};
}

inline std::vector<ReferenceDiagram> reference_diagrams() {
  return {ground_double_elevator(),  ground_and_joint_into_etage(),      ground_joint_etage_chain(),
          joint_double_elevator(),   two_grounds_and_joint_into_etage(), ground_joint_etage_chain_m1()};
}

/// Shapes whose contribution is not polynomial in the end weights: degrees
/// set, weights left open. End 0 carries μ₁, end 1 carries μ₂; edge 2 is w.
inline FloorDiagram two_grounds_parity_shape() {
  FloorDiagram d;
  int g0 = d.add_vertex(VertexKind::Ground, half(1));
  int g1 = d.add_vertex(VertexKind::Ground, half(1));
  int f1 = d.add_vertex(VertexKind::Etage, half(2));
  int f2 = d.add_vertex(VertexKind::Etage, half(2));
  d.add_edge(g0, f1);
  d.add_edge(g1, f2);
  d.add_edge(f1, f2);
  d.add_end(f1);
  d.add_end(f2);
  return d;
}

inline FloorDiagram joint_and_ground_parity_shape() {
  FloorDiagram d;
  int g = d.add_vertex(VertexKind::Ground, half(1));
  int j = d.add_vertex(VertexKind::Joint);
  int f1 = d.add_vertex(VertexKind::Etage, half(2));
  int f2 = d.add_vertex(VertexKind::Etage, half(2));
  d.add_edge(j, f1);
  d.add_edge(j, f1);
  d.add_edge(f1, f2);
  d.add_edge(g, f2);
  d.add_end(f1);
  d.add_end(f2);
  return d;
}

inline FloorDiagram joint_fork_chain_shape() {
  FloorDiagram d;
  int j = d.add_vertex(VertexKind::Joint);
  int f1 = d.add_vertex(VertexKind::Etage, half(2));
  int f2 = d.add_vertex(VertexKind::Etage, half(2));
  d.add_edge(j, f1);
  d.add_edge(j, f2);
  d.add_edge(f1, f2);
  d.add_end(f1);
  d.add_end(f2);
  return d;
}

/// Bare genus-2 cores (no ends, weights or degrees) once every pendant joint
/// (one elevator to a floor, one end) is removed.
inline FloorDiagram core_joint_loop() {
  FloorDiagram d;
  int j = d.add_vertex(VertexKind::Joint);
  int f = d.add_vertex(VertexKind::Etage);
  d.add_edge(j, f);
  d.add_edge(j, f);
  return d;
}

inline FloorDiagram core_joint_fork() {
  FloorDiagram d;
  int j = d.add_vertex(VertexKind::Joint);
  int f1 = d.add_vertex(VertexKind::Etage);
  int f2 = d.add_vertex(VertexKind::Etage);
  d.add_edge(j, f1);
  d.add_edge(j, f2);
  return d;
}

inline FloorDiagram core_ground_edge() {
  FloorDiagram d;
  int g = d.add_vertex(VertexKind::Ground);
  int f = d.add_vertex(VertexKind::Etage);
  d.add_edge(g, f);
  return d;
}

/// Two étages joined directly; valid in genus 2 but not among the drawn cores.
inline FloorDiagram core_etage_chain() {
  FloorDiagram d;
  int f1 = d.add_vertex(VertexKind::Etage);
  int f2 = d.add_vertex(VertexKind::Etage);
  d.add_edge(f1, f2);
  return d;
}

/// Removes pendant joints, then every end, weight and degree.
inline FloorDiagram bare_core(const FloorDiagram& d) {
  FloorDiagram cur = d;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < static_cast<int>(cur.vertices.size()); ++v) {
      if (cur.vertices[v].kind != VertexKind::Joint) continue;
      int edges = 0, ends = 0;
      for (const auto& e : cur.edges) edges += e.tail == v ? 1 : 0;
      for (const auto& e : cur.ends) ends += e.source == v ? 1 : 0;
      if (edges != 1 || ends != 1) continue;
      FloorDiagram next;
      std::vector<int> map(cur.vertices.size(), -1);
      for (int u = 0; u < static_cast<int>(cur.vertices.size()); ++u) {
        if (u != v) map[u] = next.add_vertex(cur.vertices[u].kind, cur.vertices[u].degree);
      }
      for (const auto& e : cur.edges) {
        if (e.tail != v) next.add_edge(map[e.tail], map[e.head], e.weight);
      }
      for (const auto& e : cur.ends) {
        if (e.source != v) next.add_end(map[e.source], e.weight);
      }
      cur = next;
      changed = true;
      break;
    }
  }
  FloorDiagram bare;
  for (const auto& v : cur.vertices) bare.add_vertex(v.kind);
  for (const auto& e : cur.edges) bare.add_edge(e.tail, e.head);
  return bare;
}

/// Genus-2 composition classes: one étage carrying a joint double elevator,
/// two étages, or a ground floor and an étage joined by a unique elevator.
enum class Genus2Class { JointLoop, TwoEtages, GroundAndEtage, None };

inline Genus2Class genus2_class(const FloorDiagram& d) {
  const int grounds = d.count(VertexKind::Ground), etages = d.count(VertexKind::Etage);
  if (grounds == 0 && etages == 1) {
    for (int v = 0; v < static_cast<int>(d.vertices.size()); ++v) {
      if (d.vertices[v].kind != VertexKind::Joint) continue;
      int to_floor = 0;
      for (const auto& e : d.edges) to_floor += e.tail == v ? 1 : 0;
      if (to_floor == 2) return Genus2Class::JointLoop;
    }
    return Genus2Class::None;
  }
  if (grounds == 0 && etages == 2) return Genus2Class::TwoEtages;
  if (grounds == 1 && etages == 1) {
    int links = 0;
    for (const auto& e : d.edges) links += d.vertices[e.tail].kind == VertexKind::Ground ? 1 : 0;
    return links == 1 ? Genus2Class::GroundAndEtage : Genus2Class::None;
  }
  return Genus2Class::None;
}

}  // namespace tmoebius::fixtures
