#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "relcone/error.hpp"
#include "relcone/fixtures.hpp"
#include "relcone/simplicial.hpp"
#include "relcone/snf.hpp"
#include "support/oracles.hpp"

using namespace relcone;

namespace {

const CoeffRing Z = CoeffRing::integers();

std::vector<Integer> ints(std::initializer_list<int> xs) {
  std::vector<Integer> v;
  for (int x : xs) v.emplace_back(x);
  return v;
}

// Betti number and the p-part count of torsion, from Q and F_p ranks only.
void check_shape(const GradedComplex& c, int n, std::size_t betti, std::size_t torsion_mod2) {
  oracle::HomologyShape s = oracle::homology_shape(c, n, 2);
  CHECK(s.betti == betti);
  CHECK(s.torsion_divisible_by_p == torsion_mod2);
}

}  // namespace

TEST_CASE("complex construction") {
  SimplicialComplex s1 = fixtures::circle(1);
  CHECK(s1.dimension() == 1);
  CHECK(s1.count(0) == 3);
  CHECK(s1.count(1) == 3);
  CHECK(s1.contains({0, 2}));
  CHECK_FALSE(s1.contains({0, 1, 2}));
  CHECK(s1.facets().size() == 3);
  CHECK_THROWS_AS(SimplicialComplex({"a", "a"}, std::vector<Simplex>{}), InvalidSimplicialComplex);
  CHECK_THROWS_AS(SimplicialComplex({"a"}, std::vector<std::vector<std::string>>{{"a", "b"}}),
                  InvalidSimplicialComplex);
  CHECK_THROWS_AS(SimplicialComplex({"a", "b"}, std::vector<Simplex>{{0, 0}}), InvalidSimplicialComplex);
  // Edge mapped onto a non-edge.
  SimplicialComplex two_points({"p", "q"}, std::vector<Simplex>{});
  SimplicialComplex edge({"a", "b"}, std::vector<Simplex>{{0, 1}});
  CHECK_THROWS_AS(SimplicialMap(edge, two_points, {0, 1}), InvalidSimplicialMap);
  CHECK_NOTHROW(SimplicialMap(edge, two_points, {1, 1}));
}

TEST_CASE("orientation signs") {
  CHECK(orient({0, 1, 2}).sign == 1);
  CHECK(orient({1, 0, 2}).sign == -1);
  CHECK(orient({2, 0, 1}).sign == 1);
  CHECK(orient({1, 1}).sign == 0);
}

TEST_CASE("homology of the fixtures") {
  GradedComplex s1 = chain_complex(fixtures::circle(1), Z);
  CHECK(homology_at(s1, 1).free_rank == 1);
  CHECK(homology_at(s1, 0).free_rank == 1);
  check_shape(s1, 1, 1, 0);

  GradedComplex p2 = chain_complex(fixtures::rp2(), Z);
  CHECK(fixtures::rp2().count(1) == 15);
  CHECK(homology_at(p2, 0).free_rank == 1);
  CHECK(homology_at(p2, 1).torsion == ints({2}));
  CHECK(homology_at(p2, 1).free_rank == 0);
  CHECK(homology_at(p2, 2).is_trivial());
  check_shape(p2, 1, 0, 1);
  CHECK(oracle::torsion_order(p2, 1) == 2);

  GradedComplex disk = chain_complex(fixtures::disk_inclusion().dst(), Z);
  for (int n = 1; n <= 2; ++n) CHECK(homology_at(disk, n).is_trivial());

  GradedComplex s2 = chain_complex(fixtures::suspended_degree_two().dst(), Z);
  CHECK(homology_at(s2, 2).free_rank == 1);
  CHECK(homology_at(s2, 1).is_trivial());

  // Rational ranks agree with integral free ranks on every fixture.
  for (const SimplicialComplex& k : {fixtures::circle(2), fixtures::rp2(), fixtures::disk_inclusion().dst(),
                                     fixtures::suspended_degree_two().src()}) {
    GradedComplex c = chain_complex(k, Z);
    for (int n = 0; n <= k.dimension(); ++n) {
      CHECK(homology_at(c.with_ring(CoeffRing::rationals()), n).free_rank == homology_at(c, n).free_rank);
    }
  }
}

TEST_CASE("chain maps of the degree fixtures") {
  ComplexMap f = chain_map(fixtures::degree_map(2), Z);
  CHECK(f.is_chain_map());
  // Each target edge is covered twice, and the fundamental cycle goes to twice a fundamental cycle.
  QMatrix f1 = f.at(1);
  for (std::size_t i = 0; i < f1.rows(); ++i) {
    std::size_t hits = 0;
    for (std::size_t j = 0; j < f1.cols(); ++j)
      if (f1(i, j) != 0) ++hits;
    CHECK(hits == 2);
  }
  ZMatrix zs = kernel_basis(to_integer(f.src().diff(1))), zt = kernel_basis(to_integer(f.dst().diff(1)));
  REQUIRE(zs.cols() == 1);
  REQUIRE(zt.cols() == 1);
  QVector image = f1 * to_rational(zs.column(0));
  QVector target = to_rational(zt.column(0));
  const Rational ratio = image[0] / target[0];
  CHECK(abs(ratio) == 2);
  for (std::size_t i = 0; i < image.size(); ++i) CHECK(image[i] == ratio * target[i]);
  for (int d = 0; d <= 6; ++d) {
    ComplexMap fd = chain_map(fixtures::degree_map(d), Z);
    CHECK(fd.is_chain_map());
    CHECK(abs(induced_map(fd, 1)(0, 0)) == d);
  }
  ComplexMap aug = chain_map(fixtures::degree_map(3), Z, true);
  CHECK(aug.is_chain_map());
  CHECK(aug.at(-1) == QMatrix{{1}});
}

TEST_CASE("reduced homology and relative-vertex chains agree") {
  for (const SimplicialComplex& k : {fixtures::circle(1), fixtures::rp2(), fixtures::suspended_degree_two().dst()}) {
    std::map<int, AbGroup> red = reduced_homology(k, Z);
    GradedComplex rel = chain_complex_rel_vertex(k, Z, 0);
    for (const auto& [n, g] : red) CHECK(isomorphic(g, homology_at(rel, n)));
    CHECK(red.at(0).is_trivial());
  }
}

TEST_CASE("mapping cylinder deformation retracts to the target") {
  for (SimplicialMap phi : {SimplicialMap::identity(fixtures::circle(1)), fixtures::degree_map(2),
                            fixtures::degree_map(0), fixtures::disk_inclusion()}) {
    MappingCylinder cyl = mapping_cylinder(phi);
    GradedComplex c = chain_complex(cyl.complex, Z);
    GradedComplex y = chain_complex(phi.dst(), Z);
    for (int n = 0; n <= 3; ++n) CHECK(isomorphic(homology_at(c, n), homology_at(y, n)));
    ComplexMap r = chain_map(cyl.retraction, Z);
    ComplexMap i = chain_map(cyl.include_target, Z);
    CHECK(quasi_iso(r));
    CHECK(quasi_iso(i));
    CHECK(compose(r, i).at(1) == QMatrix::identity(y.rank(1)));
  }
  // Source inclusion followed by the retraction is f itself.
  SimplicialMap phi = fixtures::degree_map(2);
  MappingCylinder cyl = mapping_cylinder(phi);
  ComplexMap ri = compose(chain_map(cyl.retraction, Z), chain_map(cyl.include_source, Z));
  ComplexMap f = chain_map(phi, Z);
  for (int n = 0; n <= 1; ++n) CHECK(ri.at(n) == f.at(n));
}

TEST_CASE("mapping cone spaces") {
  auto reduced = [](const SimplicialMap& phi) { return reduced_homology(mapping_cone_space(phi), Z); };
  SUBCASE("identity is contractible") {
    for (const auto& [n, g] : reduced(SimplicialMap::identity(fixtures::circle(1)))) CHECK(g.is_trivial());
  }
  SUBCASE("degree two gives the projective plane") {
    auto h = reduced(fixtures::degree_map(2));
    CHECK(h.at(1).torsion == ints({2}));
    CHECK(h.at(1).free_rank == 0);
    CHECK(h.at(2).is_trivial());
    GradedComplex rel = chain_complex_rel_vertex(mapping_cone_space(fixtures::degree_map(2)), Z, 0);
    check_shape(rel, 1, 0, 1);
    check_shape(rel, 2, 0, 0);
  }
  SUBCASE("constant map") {
    auto h = reduced(fixtures::degree_map(0));
    CHECK(h.at(2).free_rank == 1);
    CHECK(h.at(2).torsion.empty());
    // The target circle survives as a wedge summand.
    CHECK(h.at(1).free_rank == 1);
  }
  CHECK(mapping_cone_space(fixtures::degree_map(1)).vertices().front() == kApex);
}

TEST_CASE("cone operator is a contracting homotopy") {
  for (const SimplicialComplex& k :
       {fixtures::circle(1), fixtures::circle(2), fixtures::rp2(), fixtures::disk_inclusion().dst(),
        fixtures::suspended_degree_two().src()}) {
    ConeOperator op = cone_operator(k);
    CHECK(op.homotopy.is_valid());
    std::map<int, AbGroup> red = reduced_homology(op.cone, Z);
    for (const auto& [n, g] : red) CHECK(g.is_trivial());
  }
  // d h(s) = s - h(d s) on every edge of the hexagon.
  SimplicialComplex hex = fixtures::circle(2);
  ConeOperator op = cone_operator(hex);
  GradedComplex c = chain_complex(op.cone, Z, true), x = chain_complex(hex, Z, true);
  QMatrix lhs = c.diff(2) * op.homotopy.at(1);
  QMatrix rhs = op.homotopy.f.at(1) - op.homotopy.at(0) * x.diff(1);
  CHECK(lhs == rhs);
  CHECK_THROWS_AS(cone_operator(mapping_cone_space(fixtures::degree_map(1))).cone, InvalidSimplicialComplex);
}

TEST_CASE("algebraic cone matches the topological cone") {
  for (int d = 0; d <= 6; ++d) {
    CAPTURE(d);
    ConeComparison cmp = compare_cones(fixtures::degree_map(d));
    CHECK(cmp.anticommutes);
    CHECK(cmp.quasi_iso);
    CHECK(cmp.iso());
    const AbGroup& h1 = cmp.degrees.at(1).algebraic;
    if (d >= 2) {
      CHECK(h1.torsion == std::vector<Integer>{Integer(d)});
      CHECK(h1.free_rank == 0);
    } else if (d == 1) {
      CHECK(h1.is_trivial());
    } else {
      CHECK(h1.free_rank == 1);
      CHECK(cmp.degrees.at(2).algebraic.free_rank == 1);
    }
    // Independent count of 2-torsion on the space side.
    GradedComplex rel = chain_complex_rel_vertex(cmp.cone_space, Z, 0);
    oracle::HomologyShape s = oracle::homology_shape(rel, 1, 2);
    CHECK(s.torsion_divisible_by_p == ((d >= 2 && d % 2 == 0) ? 1u : 0u));
    CHECK(s.betti == (d == 0 ? 1u : 0u));
  }
  ConeComparison disk = compare_cones(fixtures::disk_inclusion());
  CHECK(disk.iso());
  CHECK(disk.degrees.at(2).algebraic.free_rank == 1);
  CHECK(disk.degrees.at(1).algebraic.is_trivial());

  ConeComparison susp = compare_cones(fixtures::suspended_degree_two());
  CHECK(susp.iso());
  CHECK(susp.degrees.at(2).algebraic.torsion == ints({2}));

  ConeComparison q = compare_cones(fixtures::degree_map(3), CoeffRing::rationals());
  CHECK(q.iso());
  ConeComparison m3 = compare_cones(fixtures::degree_map(3), CoeffRing::mod(3));
  CHECK(m3.iso());
  CHECK(m3.degrees.at(1).algebraic.free_rank == 1);
}

TEST_CASE("nerves of covers") {
  CoverData arcs{{"A0", "A1", "A2"}, {{0, 1}, {1, 2}, {0, 2}}};
  SimplicialComplex n = nerve(arcs);
  CHECK(homology_at(chain_complex(n, Z), 1).free_rank == 1);
  CoverData disk{{"A0", "A1", "A2", "I"}, {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {1, 3}, {2, 3}, {0, 1, 3}, {1, 2, 3}, {0, 2, 3}}};
  GradedComplex dn = chain_complex(nerve(disk), Z);
  for (int k = 1; k <= 2; ++k) CHECK(homology_at(dn, k).is_trivial());
  CHECK(cohomology_at(dual_complex(dn), 2).is_trivial());
  CHECK_THROWS_AS(nerve(CoverData{{"A", "B", "C"}, {{0, 1, 2}}}), InconsistentIntersections);
  CHECK_THROWS_AS(nerve(CoverData{{"A", "B"}, {{0, 0}}}), InconsistentIntersections);
  CHECK_THROWS_AS(nerve(CoverData{{"A", "B"}, {{0, 5}}}), InconsistentIntersections);
}
