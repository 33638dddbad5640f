#include "relcone/cech.hpp"

#include <algorithm>

#include "relcone/error.hpp"
#include "relcone/parallel.hpp"

namespace relcone {

// -------------------------------------------------------------- covers

Cover::Cover(const CoverData& data) : nerve_(relcone::nerve(data)) {}

Cover Cover::vertex_star(const SimplicialComplex& k) { return Cover(k); }

CoverData Cover::data() const {
  CoverData d;
  d.sets = nerve_.vertices();
  for (int n = 1; n <= nerve_.dimension(); ++n)
    for (const auto& s : nerve_.simplices(n)) d.intersections.push_back(s);
  return d;
}

CoverMap::CoverMap(Cover src, Cover dst, std::vector<std::size_t> r)
    : src_(std::move(src)), dst_(std::move(dst)), r_(std::move(r)) {
  try {
    (void)nerve_map();
  } catch (const InvalidSimplicialMap& e) {
    throw InvalidCoverMap(e.what());
  }
}

CoverMap CoverMap::from_simplicial(const SimplicialMap& phi) {
  return CoverMap(Cover::vertex_star(phi.src()), Cover::vertex_star(phi.dst()), phi.vmap());
}

CoverMap CoverMap::identity(const Cover& c) {
  std::vector<std::size_t> r(c.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = i;
  return CoverMap(c, c, r);
}

CoverMap CoverMap::absolute(const Cover& c) { return CoverMap(Cover(CoverData{}), c, {}); }

SimplicialMap CoverMap::nerve_map() const { return SimplicialMap(src_.nerve(), dst_.nerve(), r_); }

// ------------------------------------------------------------ cochains

CechCochain::CechCochain(Cover cover, int degree, CoeffRing ring, std::vector<Rational> values)
    : cover_(std::move(cover)), degree_(degree), ring_(ring), values_(std::move(values)) {
  if (values_.size() != cover_.nerve().count(degree_)) {
    throw ShapeMismatch("cochain of degree " + std::to_string(degree_) + " needs " +
                        std::to_string(cover_.nerve().count(degree_)) + " values, got " +
                        std::to_string(values_.size()));
  }
  for (auto& v : values_) {
    v.canonicalize();
    v = ring_.normalize(v);
  }
}

CechCochain CechCochain::zero(const Cover& cover, int degree, CoeffRing ring) {
  return CechCochain(cover, degree, ring, std::vector<Rational>(cover.nerve().count(degree), 0));
}

Rational CechCochain::value(const std::vector<std::size_t>& tuple) const {
  if (tuple.size() != static_cast<std::size_t>(degree_ + 1)) throw DegreeMismatch("tuple length");
  OrientedSimplex o = orient(tuple);
  if (o.sign == 0) return 0;
  if (!cover_.nerve().contains(o.simplex)) throw InconsistentIntersections("tuple is not an intersection");
  return ring_.normalize(o.sign * values_[cover_.nerve().index_of(o.simplex)]);
}

bool CechCochain::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v == 0; });
}

CechCochain CechCochain::with_ring(CoeffRing ring) const { return CechCochain(cover_, degree_, ring, values_); }

namespace {

void require_compatible(const CechCochain& a, const CechCochain& b) {
  if (a.cover() != b.cover()) throw CoverMismatch("cochains live on different covers");
  if (a.ring() != b.ring()) throw RingMismatch(a.ring().name() + " vs " + b.ring().name());
  if (a.degree() != b.degree()) throw DegreeMismatch("cochain degrees differ");
}

std::vector<Rational> times(const QMatrix& m, const std::vector<Rational>& v) { return m * v; }

}  // namespace

CechCochain operator+(const CechCochain& a, const CechCochain& b) {
  require_compatible(a, b);
  std::vector<Rational> v = a.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += b.values()[i];
  return CechCochain(a.cover(), a.degree(), a.ring(), std::move(v));
}

CechCochain operator-(const CechCochain& a) { return scale(-1, a); }

CechCochain operator-(const CechCochain& a, const CechCochain& b) { return a + (-b); }

CechCochain scale(const Integer& k, const CechCochain& a) {
  std::vector<Rational> v = a.values();
  for (auto& x : v) x *= k;
  return CechCochain(a.cover(), a.degree(), a.ring(), std::move(v));
}

QMatrix cech_diff_matrix(const Cover& cover, int p) {
  const SimplicialComplex& k = cover.nerve();
  QMatrix d(k.count(p + 1), k.count(p));
  const auto& cells = k.simplices(p + 1);
  for (std::size_t r = 0; r < cells.size(); ++r) {
    for (std::size_t i = 0; i < cells[r].size(); ++i) {
      Simplex face = cells[r];
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
      if (face.empty()) continue;
      d(r, k.index_of(face)) += (i % 2 == 0) ? 1 : -1;
    }
  }
  return d;
}

CechCochain cech_diff(const CechCochain& c) {
  return CechCochain(c.cover(), c.degree() + 1, c.ring(), times(cech_diff_matrix(c.cover(), c.degree()), c.values()));
}

QMatrix pullback_matrix(const CoverMap& m, int p) {
  const SimplicialComplex& src = m.src().nerve();
  const SimplicialComplex& dst = m.dst().nerve();
  QMatrix out(src.count(p), dst.count(p));
  const auto& cells = src.simplices(p);
  for (std::size_t r = 0; r < cells.size(); ++r) {
    std::vector<std::size_t> image;
    for (auto i : cells[r]) image.push_back(m.r()[i]);
    OrientedSimplex o = orient(std::move(image));
    if (o.sign != 0) out(r, dst.index_of(o.simplex)) += o.sign;
  }
  return out;
}

CechCochain pullback(const CechCochain& c, const CoverMap& m) {
  if (c.cover() != m.dst()) throw CoverMismatch("cochain does not live on the target cover");
  return CechCochain(m.src(), c.degree(), c.ring(), times(pullback_matrix(m, c.degree()), c.values()));
}

GradedComplex cech_complex(const Cover& cover, CoeffRing ring) {
  std::map<int, std::size_t> ranks;
  std::map<int, QMatrix> d;
  const int top = cover.nerve().dimension();
  for (int p = 0; p <= top; ++p) ranks[p] = cover.nerve().count(p);
  for (int p = 0; p < top; ++p) d[p] = cech_diff_matrix(cover, p);
  return GradedComplex::from_cochains(ring, ranks, d);
}

ComplexMap pullback_map(const CoverMap& m, CoeffRing ring) {
  std::map<int, QMatrix> mat;
  const int top = std::min(m.src().nerve().dimension(), m.dst().nerve().dimension());
  for (int p = 0; p <= top; ++p) mat[-p] = pullback_matrix(m, p);
  return ComplexMap(cech_complex(m.dst(), ring), cech_complex(m.src(), ring), mat);
}

GradedComplex relative_cone_complex(const CoverMap& m, CoeffRing ring) {
  return cone_of_cochain_map(pullback_map(m, ring));
}

// --------------------------------------------------- relative cochains

void RelCechCochain::check(const CoverMap& m) const {
  if (s.cover() != m.src() || t.cover() != m.dst()) throw CoverMismatch("relative cochain does not fit the cover map");
  if (s.ring() != t.ring()) throw RingMismatch(s.ring().name() + " vs " + t.ring().name());
  if (s.degree() + 1 != t.degree()) throw DegreeMismatch("relative cochain needs deg s = deg t - 1");
}

QVector RelCechCochain::flatten() const {
  QVector v = s.values();
  v.insert(v.end(), t.values().begin(), t.values().end());
  return v;
}

RelCechCochain RelCechCochain::zero(const CoverMap& m, int degree, CoeffRing ring) {
  return {CechCochain::zero(m.src(), degree - 1, ring), CechCochain::zero(m.dst(), degree, ring)};
}

RelCechCochain RelCechCochain::split(const CoverMap& m, int degree, CoeffRing ring, const QVector& v) {
  const std::size_t k = m.src().nerve().count(degree - 1);
  if (v.size() != k + m.dst().nerve().count(degree)) throw ShapeMismatch("relative cochain length");
  return {CechCochain(m.src(), degree - 1, ring, QVector(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k))),
          CechCochain(m.dst(), degree, ring, QVector(v.begin() + static_cast<std::ptrdiff_t>(k), v.end()))};
}

RelCechCochain operator+(const RelCechCochain& a, const RelCechCochain& b) { return {a.s + b.s, a.t + b.t}; }
RelCechCochain operator-(const RelCechCochain& a) { return {-a.s, -a.t}; }
RelCechCochain scale(const Integer& k, const RelCechCochain& a) { return {scale(k, a.s), scale(k, a.t)}; }

RelCechCochain rel_diff(const CoverMap& m, const RelCechCochain& u) {
  u.check(m);
  const CoeffRing q = CoeffRing::rationals();
  CechCochain s = u.s.with_ring(q), t = u.t.with_ring(q);
  CechCochain ds = pullback(t, m) - cech_diff(s);
  CechCochain dt = cech_diff(t);
  return {ds.with_ring(u.ring()), dt.with_ring(u.ring())};
}

bool is_rel_cocycle(const CoverMap& m, const RelCechCochain& u) {
  RelCechCochain d = rel_diff(m, u);
  return d.s.is_zero() && d.t.is_zero();
}

// ------------------------------------------------ relative cohomology

RelativeCohomology::RelativeCohomology(CoverMap m, CoeffRing ring)
    : map_(std::move(m)), ring_(ring), cone_(relative_cone_complex(map_, ring)) {
  const int top = std::max(map_.src().nerve().dimension() + 1, map_.dst().nerve().dimension());
  std::vector<Subquotient> computed(static_cast<std::size_t>(top + 1));
  parallel_for(computed.size(), [&](std::size_t q) {
    computed[q] = homology_subquotient(cone_, -static_cast<int>(q));
  });
  for (std::size_t q = 0; q < computed.size(); ++q) groups_.emplace(static_cast<int>(q), std::move(computed[q]));
  empty_ = homology_subquotient(GradedComplex(ring, {}, {}), 0);
}

const Subquotient& RelativeCohomology::at(int q) const {
  auto it = groups_.find(q);
  return it == groups_.end() ? empty_ : it->second;
}

QVector RelativeCohomology::class_of(const RelCechCochain& u) const {
  u.check(map_);
  if (u.ring() != ring_) throw RingMismatch(u.ring().name() + " vs " + ring_.name());
  if (!is_rel_cocycle(map_, u)) throw NotACocycle("relative cochain is not closed");
  if (groups_.find(u.degree()) == groups_.end()) return {};
  return at(u.degree()).coords(u.flatten());
}

RelCechCochain RelativeCohomology::representative(int q, const QVector& coords) const {
  const Subquotient& sq = at(q);
  if (coords.size() != sq.ngens()) throw ShapeMismatch("class coordinates do not match the generator count");
  QVector v(cone_.rank(-q), 0);
  for (std::size_t g = 0; g < coords.size(); ++g) {
    const ZVector& gen = sq.group().generators[g];
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += coords[g] * gen[i];
  }
  return RelCechCochain::split(map_, q, ring_, v);
}

BocksteinResult bockstein(const RelativeCohomology& h, const RelCechCochain& u) {
  const CoverMap& m = h.cover_map();
  if (u.ring().kind() != RingKind::AngleQ) throw RingMismatch("bockstein takes angle-valued cochains");
  if (!is_rel_cocycle(m, u)) throw NotACocycle("angle cochain is not closed");
  RelCechCochain lifted{u.s.with_ring(CoeffRing::rationals()), u.t.with_ring(CoeffRing::rationals())};
  RelCechCochain d = rel_diff(m, lifted);
  BocksteinResult out;
  out.cocycle = {d.s.with_ring(CoeffRing::integers()), d.t.with_ring(CoeffRing::integers())};
  out.class_coords = h.class_of(out.cocycle);
  out.group = h.group(out.cocycle.degree());
  return out;
}

BocksteinResult bockstein(const CoverMap& m, const RelCechCochain& u) {
  return bockstein(RelativeCohomology(m), u);
}

}  // namespace relcone
