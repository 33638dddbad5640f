#pragma once

#include <string>

#include "relcone/cech.hpp"
#include "relcone/geo_classes.hpp"
#include "relcone/simplicial.hpp"

namespace relcone::fixtures {

/// Cycle graph on 3d vertices prefix0 ... prefix(3d-1) (d >= 1).
SimplicialComplex circle(int d, const std::string& prefix = "v");
/// v_i -> w_(i mod 3) from circle(d) onto circle(1, "w"). For d = 0 the
/// constant map circle(1) -> w0.
SimplicialMap degree_map(int d);
/// circle(2) into its cone with apex "c".
SimplicialMap disk_inclusion();
/// Unreduced suspension with poles "N" and "S".
SimplicialComplex suspension(const SimplicialComplex& k);
SimplicialMap suspension(const SimplicialMap& phi);
/// Suspension of degree_map(2): a degree-two map of 2-spheres.
SimplicialMap suspended_degree_two();
/// Six-vertex projective plane.
SimplicialComplex rp2();

/// Three arcs A0, A1, A2 covering a circle, overlapping pairwise.
Cover circle_arc_cover();
/// The arcs plus an interior set I of the disk: every arc meets I and each
/// pair of arcs meets inside I.
Cover disk_cover();
/// A_i -> A_i.
CoverMap disk_cover_map();
/// Arc cover of the circle onto the one-set cover {P} of a point.
CoverMap circle_to_point();
/// {P} -> A0.
CoverMap point_to_circle();
/// Vertex-star covers of suspended_degree_two().
CoverMap suspended_degree_two_covers();

/// On suspended_degree_two_covers(): t = 1/2 on the first triangle of the
/// target and s = 1/2 on the edges crossed by a dual path joining the two
/// preimage triangles, so that ds = pullback t modulo Z.
RelCocycle half_angle_gerbe();
/// On point_to_circle(): b = 0 and a = 1 on the intersection A0 A1.
RelCocycle winding_function();

/// (0, alpha) on disk_inclusion() with alpha spread evenly over the
/// triangles, oriented so that it integrates to `total` over the
/// fundamental relative 2-cycle.
RelRealCochainPair disk_area(const Rational& total);

}  // namespace relcone::fixtures
