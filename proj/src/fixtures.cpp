#include "relcone/fixtures.hpp"

#include <optional>
#include <stdexcept>

#include "relcone/error.hpp"

namespace relcone::fixtures {

SimplicialComplex circle(int d, const std::string& prefix) {
  if (d < 1) throw InvalidSimplicialComplex("circle needs d >= 1");
  const std::size_t n = 3 * static_cast<std::size_t>(d);
  std::vector<std::string> names;
  std::vector<Simplex> edges;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(prefix + std::to_string(i));
    edges.push_back({i, (i + 1) % n});
  }
  return SimplicialComplex(names, edges);
}

SimplicialMap degree_map(int d) {
  SimplicialComplex target = circle(1, "w");
  if (d == 0) {
    SimplicialComplex src = circle(1);
    return SimplicialMap(src, target, std::vector<std::size_t>(src.num_vertices(), 0));
  }
  SimplicialComplex src = circle(d);
  std::vector<std::size_t> m(src.num_vertices());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = i % 3;
  return SimplicialMap(src, target, m);
}

SimplicialMap disk_inclusion() {
  SimplicialComplex rim = circle(2);
  std::vector<std::string> names = rim.vertices();
  names.push_back("c");
  const std::size_t apex = rim.num_vertices();
  std::vector<Simplex> faces;
  for (const auto& e : rim.simplices(1)) faces.push_back({e[0], e[1], apex});
  SimplicialComplex disk(names, faces);
  std::vector<std::size_t> m(rim.num_vertices());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = i;
  return SimplicialMap(rim, disk, m);
}

SimplicialComplex suspension(const SimplicialComplex& k) {
  std::vector<std::string> names = k.vertices();
  const std::size_t north = names.size(), south = north + 1;
  names.push_back("N");
  names.push_back("S");
  std::vector<Simplex> facets;
  for (const auto& f : k.facets()) {
    Simplex up = f, down = f;
    up.push_back(north);
    down.push_back(south);
    facets.push_back(std::move(up));
    facets.push_back(std::move(down));
  }
  return SimplicialComplex(names, facets);
}

SimplicialMap suspension(const SimplicialMap& phi) {
  SimplicialComplex src = suspension(phi.src()), dst = suspension(phi.dst());
  std::vector<std::size_t> m = phi.vmap();
  m.push_back(phi.dst().num_vertices());
  m.push_back(phi.dst().num_vertices() + 1);
  return SimplicialMap(src, dst, m);
}

SimplicialMap suspended_degree_two() { return suspension(degree_map(2)); }

SimplicialComplex rp2() {
  return SimplicialComplex({"1", "2", "3", "4", "5", "6"},
                           std::vector<std::vector<std::string>>{{"1", "2", "3"},
                                                                 {"1", "3", "4"},
                                                                 {"1", "4", "5"},
                                                                 {"1", "5", "6"},
                                                                 {"1", "6", "2"},
                                                                 {"2", "3", "5"},
                                                                 {"3", "4", "6"},
                                                                 {"4", "5", "2"},
                                                                 {"5", "6", "3"},
                                                                 {"6", "2", "4"}});
}

}  // namespace relcone::fixtures

namespace relcone::fixtures {

Cover circle_arc_cover() { return Cover(CoverData{{"A0", "A1", "A2"}, {{0, 1}, {1, 2}, {0, 2}}}); }

Cover disk_cover() {
  return Cover(CoverData{{"A0", "A1", "A2", "I"},
                         {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {1, 3}, {2, 3}, {0, 1, 3}, {1, 2, 3}, {0, 2, 3}}});
}

CoverMap disk_cover_map() { return CoverMap(circle_arc_cover(), disk_cover(), {0, 1, 2}); }

CoverMap circle_to_point() { return CoverMap(circle_arc_cover(), Cover(CoverData{{"P"}, {}}), {0, 0, 0}); }

CoverMap point_to_circle() { return CoverMap(Cover(CoverData{{"P"}, {}}), circle_arc_cover(), {0}); }

CoverMap suspended_degree_two_covers() { return CoverMap::from_simplicial(suspended_degree_two()); }

RelCocycle half_angle_gerbe() {
  CoverMap m = suspended_degree_two_covers();
  const SimplicialComplex& src = m.src().nerve();
  const SimplicialComplex& dst = m.dst().nerve();
  const CoeffRing U1 = CoeffRing::angles();

  std::vector<Rational> t(dst.count(2), 0);
  t[0] = Rational(1, 2);
  QVector pulled = pullback_matrix(m, 2) * QVector(t.begin(), t.end());
  std::vector<std::size_t> ends;
  for (std::size_t k = 0; k < pulled.size(); ++k)
    if (pulled[k] != 0) ends.push_back(k);
  if (ends.size() != 2) throw std::logic_error("expected two preimage triangles");

  // Breadth-first search in the dual graph, neighbours in edge order.
  const auto& triangles = src.simplices(2);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacent(triangles.size());  // (edge, triangle)
  std::map<std::size_t, std::vector<std::size_t>> by_edge;
  for (std::size_t k = 0; k < triangles.size(); ++k) {
    for (std::size_t i = 0; i < 3; ++i) {
      Simplex face = triangles[k];
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
      by_edge[src.index_of(face)].push_back(k);
    }
  }
  for (const auto& [e, ts] : by_edge) {
    if (ts.size() != 2) continue;
    adjacent[ts[0]].push_back({e, ts[1]});
    adjacent[ts[1]].push_back({e, ts[0]});
  }
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> parent(triangles.size());
  std::vector<bool> seen(triangles.size(), false);
  std::vector<std::size_t> queue{ends[0]};
  seen[ends[0]] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& [e, next] : adjacent[queue[head]]) {
      if (seen[next]) continue;
      seen[next] = true;
      parent[next] = std::make_pair(e, queue[head]);
      queue.push_back(next);
    }
  }
  std::vector<Rational> s(src.count(1), 0);
  for (std::size_t k = ends[1]; parent[k]; k = parent[k]->second) s[parent[k]->first] = Rational(1, 2);

  RelCocycle c(CocycleKind::Gerbe, m,
               {CechCochain(m.src(), 1, U1, std::move(s)), CechCochain(m.dst(), 2, U1, std::move(t))});
  if (!validate(c).valid) throw std::logic_error("half-angle gerbe fixture is not a cocycle");
  return c;
}

RelCocycle winding_function() {
  CoverMap m = point_to_circle();
  const CoeffRing Z = CoeffRing::integers();
  std::vector<Rational> a(m.dst().nerve().count(1), 0);
  a[m.dst().nerve().index_of({0, 1})] = 1;
  return RelCocycle(CocycleKind::Function, m, {CechCochain::zero(m.src(), 0, Z), CechCochain(m.dst(), 1, Z, a)});
}

RelRealCochainPair disk_area(const Rational& total) {
  SimplicialMap phi = disk_inclusion();
  GradedComplex cone = cone_of_map(chain_map(phi, CoeffRing::integers()));
  Subquotient h = homology_subquotient(cone, 2);
  if (h.ngens() != 1) throw std::logic_error("disk fixture should have one relative 2-class");
  const ZVector& gen = h.group().generators[0];
  const std::size_t split = phi.src().count(1);
  const std::size_t faces = phi.dst().count(2);
  QVector alpha(faces, 0);
  for (std::size_t k = 0; k < faces; ++k) {
    const Integer& e = gen[split + k];
    alpha[k] = e == 0 ? Rational(0) : Rational(sgn(e)) * total / static_cast<long>(faces);
  }
  return {2, QVector(split, 0), alpha};
}

}  // namespace relcone::fixtures
