#pragma once

#include <map>
#include <string>
#include <vector>

#include "relcone/homology.hpp"
#include "relcone/simplicial.hpp"

namespace relcone {

/// A cover recorded by its nerve: one vertex per open set, one simplex per
/// nonempty intersection.
class Cover {
 public:
  Cover() = default;
  /// Throws InconsistentIntersections.
  explicit Cover(const CoverData& data);
  /// The cover by open vertex stars; its nerve is k itself.
  static Cover vertex_star(const SimplicialComplex& k);

  const SimplicialComplex& nerve() const { return nerve_; }
  const std::vector<std::string>& sets() const { return nerve_.vertices(); }
  std::size_t size() const { return nerve_.num_vertices(); }
  /// Intersections of two or more sets, sorted.
  CoverData data() const;

  friend bool operator==(const Cover& a, const Cover& b) { return a.nerve_ == b.nerve_; }
  friend bool operator!=(const Cover& a, const Cover& b) { return !(a == b); }

 private:
  explicit Cover(SimplicialComplex nerve) : nerve_(std::move(nerve)) {}
  SimplicialComplex nerve_;
};

/// r: I -> J sending every intersection of the source cover into an
/// intersection of the target cover.
class CoverMap {
 public:
  CoverMap() = default;
  /// Throws InvalidCoverMap.
  CoverMap(Cover src, Cover dst, std::vector<std::size_t> r);
  /// Vertex-star covers of both sides, r = the vertex map.
  static CoverMap from_simplicial(const SimplicialMap& phi);
  static CoverMap identity(const Cover& c);
  /// The empty cover mapped into c: relative classes become absolute ones.
  static CoverMap absolute(const Cover& c);

  const Cover& src() const { return src_; }
  const Cover& dst() const { return dst_; }
  const std::vector<std::size_t>& r() const { return r_; }
  /// r as a simplicial map of nerves.
  SimplicialMap nerve_map() const;

 private:
  Cover src_, dst_;
  std::vector<std::size_t> r_;
};

/// Antisymmetric cochain stored once per sorted nerve simplex; values are
/// kept normalized in the ring (angles in [0, 1)).
class CechCochain {
 public:
  CechCochain() = default;
  /// Throws ShapeMismatch when the value count differs from the number of
  /// p-simplices and RingMismatch for values outside the ring.
  CechCochain(Cover cover, int degree, CoeffRing ring, std::vector<Rational> values);
  static CechCochain zero(const Cover& cover, int degree, CoeffRing ring);

  const Cover& cover() const { return cover_; }
  int degree() const { return degree_; }
  const CoeffRing& ring() const { return ring_; }
  const std::vector<Rational>& values() const { return values_; }
  /// Value on an ordered index tuple: sign of the sorting permutation times
  /// the stored value, zero on repeated indices.
  Rational value(const std::vector<std::size_t>& tuple) const;
  bool is_zero() const;
  CechCochain with_ring(CoeffRing ring) const;

  friend bool operator==(const CechCochain& a, const CechCochain& b) {
    return a.degree_ == b.degree_ && a.ring_ == b.ring_ && a.values_ == b.values_ && a.cover_ == b.cover_;
  }
  friend bool operator!=(const CechCochain& a, const CechCochain& b) { return !(a == b); }

 private:
  Cover cover_;
  int degree_ = 0;
  CoeffRing ring_;
  std::vector<Rational> values_;
};

/// Throws CoverMismatch or RingMismatch.
CechCochain operator+(const CechCochain& a, const CechCochain& b);
CechCochain operator-(const CechCochain& a);
CechCochain operator-(const CechCochain& a, const CechCochain& b);
CechCochain scale(const Integer& k, const CechCochain& a);

/// d^p: C^p -> C^{p+1} of the cover, (df)(a_0..a_{p+1}) = sum (-1)^i f(..^a_i..).
QMatrix cech_diff_matrix(const Cover& cover, int p);
CechCochain cech_diff(const CechCochain& c);
/// C^p(dst) -> C^p(src).
QMatrix pullback_matrix(const CoverMap& m, int p);
/// Throws CoverMismatch when c does not live on m.dst().
CechCochain pullback(const CechCochain& c, const CoverMap& m);

/// Cochain-graded Čech complex in degrees [0, dim nerve].
GradedComplex cech_complex(const Cover& cover, CoeffRing ring);
/// The pullback as a map of cochain complexes.
ComplexMap pullback_map(const CoverMap& m, CoeffRing ring);
/// Cone^n = C^{n-1}(src) + C^n(dst), d(s, t) = (pullback t - ds, dt).
GradedComplex relative_cone_complex(const CoverMap& m, CoeffRing ring);

/// (s, t) in relative degree n = t.degree() = s.degree() + 1.
struct RelCechCochain {
  CechCochain s;
  CechCochain t;

  int degree() const { return t.degree(); }
  const CoeffRing& ring() const { return t.ring(); }
  /// Throws CoverMismatch, RingMismatch or DegreeMismatch.
  void check(const CoverMap& m) const;
  /// Coordinates in the relative cone: s first, then t.
  QVector flatten() const;
  static RelCechCochain zero(const CoverMap& m, int degree, CoeffRing ring);
  static RelCechCochain split(const CoverMap& m, int degree, CoeffRing ring, const QVector& v);

  friend bool operator==(const RelCechCochain& a, const RelCechCochain& b) { return a.s == b.s && a.t == b.t; }
};

RelCechCochain operator+(const RelCechCochain& a, const RelCechCochain& b);
RelCechCochain operator-(const RelCechCochain& a);
RelCechCochain scale(const Integer& k, const RelCechCochain& a);

/// (pullback t - ds, dt), computed in the ring of u.
RelCechCochain rel_diff(const CoverMap& m, const RelCechCochain& u);
bool is_rel_cocycle(const CoverMap& m, const RelCechCochain& u);

/// H^q(Phi, Z) for every q, computed once from the relative cone.
class RelativeCohomology {
 public:
  RelativeCohomology() = default;
  RelativeCohomology(CoverMap m, CoeffRing ring = CoeffRing::integers());

  const CoverMap& cover_map() const { return map_; }
  const GradedComplex& cone() const { return cone_; }
  /// Trivial subquotient outside the stored range.
  const Subquotient& at(int q) const;
  const AbGroup& group(int q) const { return at(q).group(); }
  /// Coordinates of the class of a relative cocycle in the generator basis.
  /// Throws NotACocycle.
  QVector class_of(const RelCechCochain& u) const;
  /// The cocycle representing sum coords_i * generator_i.
  RelCechCochain representative(int q, const QVector& coords) const;

 private:
  CoverMap map_;
  CoeffRing ring_;
  GradedComplex cone_;
  std::map<int, Subquotient> groups_;
  Subquotient empty_;
};

struct BocksteinResult {
  RelCechCochain cocycle;  ///< integer cocycle of degree u.degree() + 1
  QVector class_coords;    ///< in the generator basis of H^{n+1}(Phi, Z)
  AbGroup group;
};

/// Lift an angle-valued relative cocycle to Q and apply the cone
/// differential. Throws NotACocycle or RingMismatch.
BocksteinResult bockstein(const RelativeCohomology& h, const RelCechCochain& u);
BocksteinResult bockstein(const CoverMap& m, const RelCechCochain& u);

}  // namespace relcone
