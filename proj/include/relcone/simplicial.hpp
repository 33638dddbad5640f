#pragma once

#include <map>
#include <string>
#include <vector>

#include "relcone/chain.hpp"
#include "relcone/homology.hpp"

namespace relcone {

/// Sorted vertex indices.
using Simplex = std::vector<std::size_t>;

/// Finite abstract simplicial complex on named, totally ordered vertices.
/// Orientation of every simplex is the order of its vertices.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  /// Facets are closed downward. Throws InvalidSimplicialComplex on unknown
  /// or repeated vertices.
  SimplicialComplex(std::vector<std::string> vertices, const std::vector<std::vector<std::string>>& facets);
  /// Same, with facets given by vertex index.
  SimplicialComplex(std::vector<std::string> vertices, const std::vector<Simplex>& facets);

  const std::vector<std::string>& vertices() const { return vertices_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  /// Throws InvalidSimplicialComplex for an unknown name.
  std::size_t vertex_index(const std::string& name) const;

  /// -1 for the empty complex.
  int dimension() const { return static_cast<int>(simplices_.size()) - 1; }
  /// n-simplices in lexicographic order (empty outside [0, dimension()]).
  const std::vector<Simplex>& simplices(int n) const;
  std::size_t count(int n) const { return simplices(n).size(); }
  bool contains(const Simplex& s) const;
  /// Position of s among simplices(s.size() - 1). Throws when absent.
  std::size_t index_of(const Simplex& s) const;
  /// Maximal simplices in (dimension, lexicographic) order.
  std::vector<Simplex> facets() const;

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.vertices_ == b.vertices_ && a.simplices_ == b.simplices_;
  }

 private:
  void build(const std::vector<Simplex>& facets);

  std::vector<std::string> vertices_;
  std::map<std::string, std::size_t> vertex_pos_;
  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::map<Simplex, std::size_t>> lookup_;
};

class SimplicialMap {
 public:
  SimplicialMap() = default;
  /// Throws InvalidSimplicialMap when a simplex does not land on a simplex.
  SimplicialMap(SimplicialComplex src, SimplicialComplex dst, std::vector<std::size_t> vmap);
  static SimplicialMap from_names(SimplicialComplex src, SimplicialComplex dst,
                                  const std::map<std::string, std::string>& vmap);
  static SimplicialMap identity(const SimplicialComplex& k);

  const SimplicialComplex& src() const { return src_; }
  const SimplicialComplex& dst() const { return dst_; }
  const std::vector<std::size_t>& vmap() const { return vmap_; }
  std::size_t operator()(std::size_t v) const { return vmap_[v]; }

 private:
  SimplicialComplex src_, dst_;
  std::vector<std::size_t> vmap_;
};

/// Image of the ordered vertex list `verts` as an oriented simplex of `k`:
/// returns the sign of the sorting permutation and the sorted simplex, or
/// sign 0 when a vertex repeats.
struct OrientedSimplex {
  int sign = 0;
  Simplex simplex;
};
OrientedSimplex orient(std::vector<std::size_t> verts);

/// Simplicial chains in degrees [0, dim]. With `augmented` a copy of the
/// ring sits in degree -1 and d_0 sums coefficients.
GradedComplex chain_complex(const SimplicialComplex& k, CoeffRing ring, bool augmented = false);
/// Chains relative to one vertex: that vertex is dropped from C_0.
/// Its homology is the reduced homology of k.
GradedComplex chain_complex_rel_vertex(const SimplicialComplex& k, CoeffRing ring, std::size_t vertex);
std::map<int, AbGroup> reduced_homology(const SimplicialComplex& k, CoeffRing ring);

/// Push-forward; degenerate images go to zero.
ComplexMap chain_map(const SimplicialMap& phi, CoeffRing ring, bool augmented = false);

/// Vertex names used by the cylinder and cone constructions.
std::string bottom_name(const std::string& x);
std::string target_name(const std::string& y);
inline const std::string kApex = "*";

/// Cyl_f: bottom copies of the source vertices followed by the target
/// vertices; the prisms (v0'...vi', f(vi)...f(vn)) of every source simplex
/// together with the target.
struct MappingCylinder {
  SimplicialComplex complex;
  SimplicialMap include_source;  ///< x -> x'
  SimplicialMap include_target;  ///< y -> y
  SimplicialMap retraction;      ///< x' -> f(x), y -> y
};
MappingCylinder mapping_cylinder(const SimplicialMap& phi);

/// Cyl_f with a cone attached along the bottom copy of the source; the
/// apex is vertex 0. Collapsing that cone recovers Cyl_f / (X x 0).
SimplicialComplex mapping_cone_space(const SimplicialMap& phi);

/// Join of k with a new first vertex and the cone homotopy
/// h(s) = [apex, s], checked against the inclusion k: K -> apex * K on
/// augmented chains (h(1) = apex).
struct ConeOperator {
  SimplicialComplex cone;
  Homotopy homotopy;  ///< f = inclusion, g = 0, h_n: C_n(K) -> C_{n+1}(cone)
};
ConeOperator cone_operator(const SimplicialComplex& k);

struct ConeComparisonDegree {
  int degree = 0;
  AbGroup algebraic;  ///< H_n(f)
  AbGroup space;      ///< reduced H_n(Cone_f)
  bool isomorphic = false;
};

struct ConeComparison {
  SimplicialComplex cone_space;
  /// l_n(x, y) = j_* h(x) - i_*(y) into chains of Cone_f relative to the apex.
  std::map<int, QMatrix> l;
  bool anticommutes = false;  ///< d l + l d = 0
  bool quasi_iso = false;     ///< (-1)^n l is a chain map with acyclic cone
  std::vector<ConeComparisonDegree> degrees;

  bool iso() const;
};
ConeComparison compare_cones(const SimplicialMap& phi, CoeffRing ring = CoeffRing::integers());

/// Cover description: set names and declared nonempty intersections
/// (tuples of set indices, size >= 2). Singletons are implicit.
struct CoverData {
  std::vector<std::string> sets;
  std::vector<std::vector<std::size_t>> intersections;
};
/// Throws InconsistentIntersections when a declared tuple has an undeclared
/// face, repeats an index or names an unknown set.
SimplicialComplex nerve(const CoverData& cover);

}  // namespace relcone
