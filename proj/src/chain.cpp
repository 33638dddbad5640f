#include "relcone/chain.hpp"

#include <algorithm>
#include <limits>

#include "relcone/error.hpp"

namespace relcone {

namespace {

bool vanishes(const QMatrix& m, const CoeffRing& ring) {
  if (ring.kind() != RingKind::IntMod) return m.is_zero();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational& x = m(i, j);
      if (x.get_den() != 1) return false;
      if (x.get_num() % ring.modulus() != 0) return false;
    }
  }
  return true;
}

QMatrix sized(const std::map<int, QMatrix>& m, int n, std::size_t rows, std::size_t cols) {
  auto it = m.find(n);
  if (it == m.end()) return QMatrix(rows, cols);
  return it->second;
}

struct Range {
  int lo = std::numeric_limits<int>::max();
  int hi = std::numeric_limits<int>::min();
  void include(int a, int b) {
    if (a > b) return;
    lo = std::min(lo, a);
    hi = std::max(hi, b);
  }
  bool empty() const { return lo > hi; }
};

QMatrix diag_blocks(const QMatrix& a, const QMatrix& b) {
  return block2x2(a, QMatrix(a.rows(), b.cols()), QMatrix(b.rows(), a.cols()), b);
}

}  // namespace

// ---------------------------------------------------------------- complex

GradedComplex::GradedComplex(CoeffRing ring, std::map<int, std::size_t> ranks, std::map<int, QMatrix> diff,
                             Grading grading)
    : ring_(ring), grading_(grading), ranks_(std::move(ranks)) {
  for (auto it = ranks_.begin(); it != ranks_.end();) {
    it = it->second == 0 ? ranks_.erase(it) : std::next(it);
  }
  for (auto& [n, m] : diff) {
    if (m.rows() != rank(n - 1) || m.cols() != rank(n)) {
      throw ShapeMismatch("diff(" + std::to_string(n) + ") is " + QMatrix::shape_str(m) + ", expected " +
                          std::to_string(rank(n - 1)) + "x" + std::to_string(rank(n)));
    }
    if (ring_.kind() != RingKind::Rat && !is_integral(m)) {
      throw RingMismatch("non-integral differential over " + ring_.name());
    }
    if (!m.empty() && !m.is_zero()) diff_.emplace(n, std::move(m));
  }
  if (!square_zero()) throw InvalidComplex("differential does not square to zero");
}

GradedComplex GradedComplex::from_cochains(CoeffRing ring, const std::map<int, std::size_t>& ranks,
                                           const std::map<int, QMatrix>& coboundaries) {
  std::map<int, std::size_t> r;
  for (const auto& [p, k] : ranks) r[-p] = k;
  std::map<int, QMatrix> d;
  for (const auto& [p, m] : coboundaries) d[-p] = m;
  return GradedComplex(ring, std::move(r), std::move(d), Grading::Cochain);
}

GradedComplex GradedComplex::with_ring(CoeffRing ring) const {
  GradedComplex c = *this;
  c.ring_ = ring;
  if (ring.kind() != RingKind::Rat) {
    for (const auto& [n, m] : c.diff_)
      if (!is_integral(m)) throw RingMismatch("non-integral differential over " + ring.name());
  }
  return c;
}

GradedComplex GradedComplex::with_grading(Grading g) const {
  GradedComplex c = *this;
  c.grading_ = g;
  return c;
}

std::size_t GradedComplex::rank(int n) const {
  auto it = ranks_.find(n);
  return it == ranks_.end() ? 0 : it->second;
}

QMatrix GradedComplex::diff(int n) const { return sized(diff_, n, rank(n - 1), rank(n)); }

int GradedComplex::lo() const { return ranks_.empty() ? 1 : ranks_.begin()->first; }
int GradedComplex::hi() const { return ranks_.empty() ? 0 : ranks_.rbegin()->first; }

bool GradedComplex::square_zero() const {
  for (int n = lo() + 1; n <= hi(); ++n) {
    if (rank(n) == 0 || rank(n - 2) == 0) continue;
    if (!vanishes(diff(n - 1) * diff(n), ring_)) return false;
  }
  return true;
}

bool operator==(const GradedComplex& a, const GradedComplex& b) {
  if (a.ring_ != b.ring_ || a.grading_ != b.grading_ || a.ranks_ != b.ranks_) return false;
  for (int n = std::min(a.lo(), b.lo()); n <= std::max(a.hi(), b.hi()) + 1; ++n) {
    if (a.diff(n) != b.diff(n)) return false;
  }
  return true;
}

// -------------------------------------------------------------------- maps

ComplexMap::ComplexMap(GradedComplex src, GradedComplex dst, std::map<int, QMatrix> mat)
    : src_(std::move(src)), dst_(std::move(dst)) {
  if (src_.ring() != dst_.ring()) throw RingMismatch("map between complexes over different rings");
  if (src_.grading() != dst_.grading()) throw DegreeMismatch("map between chain and cochain complexes");
  for (auto& [n, m] : mat) {
    if (m.rows() != dst_.rank(n) || m.cols() != src_.rank(n)) {
      throw ShapeMismatch("map in degree " + std::to_string(n) + " is " + QMatrix::shape_str(m));
    }
    if (src_.ring().kind() != RingKind::Rat && !is_integral(m)) {
      throw RingMismatch("non-integral map entry over " + src_.ring().name());
    }
    if (!m.empty() && !m.is_zero()) mat_.emplace(n, std::move(m));
  }
}

ComplexMap ComplexMap::identity(const GradedComplex& c) {
  std::map<int, QMatrix> m;
  for (const auto& [n, r] : c.ranks()) m[n] = QMatrix::identity(r);
  return ComplexMap(c, c, std::move(m));
}

ComplexMap ComplexMap::zero(const GradedComplex& src, const GradedComplex& dst) { return ComplexMap(src, dst, {}); }

QMatrix ComplexMap::at(int n) const { return sized(mat_, n, dst_.rank(n), src_.rank(n)); }

int ComplexMap::lo() const { return std::min(src_.lo(), dst_.lo()); }
int ComplexMap::hi() const { return std::max(src_.hi(), dst_.hi()); }

bool ComplexMap::is_chain_map() const {
  for (int n = lo(); n <= hi() + 1; ++n) {
    QMatrix lhs = dst_.diff(n) * at(n);
    QMatrix rhs = at(n - 1) * src_.diff(n);
    if (!vanishes(lhs - rhs, src_.ring())) return false;
  }
  return true;
}

ComplexMap compose(const ComplexMap& g, const ComplexMap& f) {
  if (!(f.dst() == g.src())) throw ShapeMismatch("compose: target of f is not the source of g");
  std::map<int, QMatrix> m;
  for (int n = f.lo(); n <= g.hi(); ++n) m[n] = g.at(n) * f.at(n);
  return ComplexMap(f.src(), g.dst(), std::move(m));
}

ComplexMap operator+(const ComplexMap& a, const ComplexMap& b) {
  std::map<int, QMatrix> m;
  for (int n = std::min(a.lo(), b.lo()); n <= std::max(a.hi(), b.hi()); ++n) m[n] = a.at(n) + b.at(n);
  return ComplexMap(a.src(), a.dst(), std::move(m));
}

ComplexMap operator-(const ComplexMap& a, const ComplexMap& b) {
  std::map<int, QMatrix> m;
  for (int n = std::min(a.lo(), b.lo()); n <= std::max(a.hi(), b.hi()); ++n) m[n] = a.at(n) - b.at(n);
  return ComplexMap(a.src(), a.dst(), std::move(m));
}

// --------------------------------------------------------------- homotopy

QMatrix Homotopy::at(int n) const { return sized(h, n, f.dst().rank(n + 1), f.src().rank(n)); }

bool Homotopy::is_valid() const {
  const GradedComplex& X = f.src();
  const GradedComplex& Y = f.dst();
  if (!(g.src() == X) || !(g.dst() == Y)) return false;
  for (const auto& [n, m] : h) {
    if (m.rows() != Y.rank(n + 1) || m.cols() != X.rank(n)) return false;
  }
  for (int n = f.lo() - 1; n <= f.hi() + 1; ++n) {
    QMatrix lhs = at(n - 1) * X.diff(n) + Y.diff(n + 1) * at(n);
    if (!vanishes(lhs - (f.at(n) - g.at(n)), X.ring())) return false;
  }
  return true;
}

ComplexMap homotopic_map(const ComplexMap& g, const std::map<int, QMatrix>& h) {
  Homotopy tmp{g, g, h};
  const GradedComplex& X = g.src();
  const GradedComplex& Y = g.dst();
  std::map<int, QMatrix> m;
  for (int n = g.lo(); n <= g.hi(); ++n) {
    m[n] = g.at(n) + tmp.at(n - 1) * X.diff(n) + Y.diff(n + 1) * tmp.at(n);
  }
  return ComplexMap(X, Y, std::move(m));
}

// -------------------------------------------------------------------- cones

QVector ConeElement::flatten() const {
  QVector v = theta;
  v.insert(v.end(), eta.begin(), eta.end());
  return v;
}

ConeElement ConeElement::split(int degree, const QVector& v, std::size_t theta_size) {
  if (theta_size > v.size()) throw ShapeMismatch("cone element split");
  ConeElement e;
  e.degree = degree;
  e.theta.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(theta_size));
  e.eta.assign(v.begin() + static_cast<std::ptrdiff_t>(theta_size), v.end());
  return e;
}

GradedComplex cone_of_map(const ComplexMap& f) {
  if (!f.is_chain_map()) throw InvalidChainMap("cone_of_map: not a chain map");
  const GradedComplex& X = f.src();
  const GradedComplex& Y = f.dst();
  Range r;
  r.include(X.lo() + 1, X.hi() + 1);
  r.include(Y.lo(), Y.hi());
  std::map<int, std::size_t> ranks;
  std::map<int, QMatrix> diff;
  if (r.empty()) return GradedComplex(X.ring(), {}, {}, X.grading());
  for (int n = r.lo; n <= r.hi; ++n) ranks[n] = X.rank(n - 1) + Y.rank(n);
  for (int n = r.lo + 1; n <= r.hi; ++n) {
    diff[n] = block2x2(X.diff(n - 1), QMatrix(X.rank(n - 2), Y.rank(n)), f.at(n - 1), -Y.diff(n));
  }
  return GradedComplex(X.ring(), std::move(ranks), std::move(diff), X.grading());
}

GradedComplex cone_of_cochain_map(const ComplexMap& f) {
  if (!f.is_chain_map()) throw InvalidChainMap("cone_of_cochain_map: not a cochain map");
  const GradedComplex& X = f.src();
  const GradedComplex& Y = f.dst();
  Range r;
  r.include(Y.lo() - 1, Y.hi() - 1);
  r.include(X.lo(), X.hi());
  if (r.empty()) return GradedComplex(X.ring(), {}, {}, Grading::Cochain);
  std::map<int, std::size_t> ranks;
  std::map<int, QMatrix> diff;
  for (int m = r.lo; m <= r.hi; ++m) ranks[m] = Y.rank(m + 1) + X.rank(m);
  // Stored degree m holds Cone^{-m}; its coboundary lands in stored m-1.
  for (int m = r.lo + 1; m <= r.hi; ++m) {
    diff[m] = block2x2(-Y.diff(m + 1), f.at(m), QMatrix(X.rank(m - 1), Y.rank(m + 1)), X.diff(m));
  }
  return GradedComplex(X.ring(), std::move(ranks), std::move(diff), Grading::Cochain);
}

QMatrix cochain_cone_reindexing(const ComplexMap& f, int stored_degree) {
  const std::size_t y = f.dst().rank(stored_degree + 1);
  const std::size_t x = f.src().rank(stored_degree);
  return block2x2(QMatrix(x, y), QMatrix::identity(x), QMatrix::identity(y), QMatrix(y, x));
}

ComplexMap homotopy_cone_iso(const Homotopy& h) {
  if (!h.is_valid()) throw InvalidHomotopy("h d + d h != f - g");
  GradedComplex cf = cone_of_map(h.f);
  GradedComplex cg = cone_of_map(h.g);
  const GradedComplex& X = h.f.src();
  const GradedComplex& Y = h.f.dst();
  std::map<int, QMatrix> m;
  for (const auto& [n, r] : cf.ranks()) {
    (void)r;
    m[n] = block2x2(QMatrix::identity(X.rank(n - 1)), QMatrix(X.rank(n - 1), Y.rank(n)), -h.at(n - 1),
                    QMatrix::identity(Y.rank(n)));
  }
  return ComplexMap(cf, cg, std::move(m));
}

ComplexMap homotopy_cone_iso_inverse(const Homotopy& h) {
  if (!h.is_valid()) throw InvalidHomotopy("h d + d h != f - g");
  GradedComplex cf = cone_of_map(h.f);
  GradedComplex cg = cone_of_map(h.g);
  const GradedComplex& X = h.f.src();
  const GradedComplex& Y = h.f.dst();
  std::map<int, QMatrix> m;
  for (const auto& [n, r] : cg.ranks()) {
    (void)r;
    m[n] = block2x2(QMatrix::identity(X.rank(n - 1)), QMatrix(X.rank(n - 1), Y.rank(n)), h.at(n - 1),
                    QMatrix::identity(Y.rank(n)));
  }
  return ComplexMap(cg, cf, std::move(m));
}

ComplexMap cone_map_of_square(const ComplexMap& phi, const ComplexMap& psi, const ComplexMap& f,
                              const ComplexMap& f_tilde) {
  if (!(phi.src() == f.src()) || !(psi.src() == f.dst()) || !(phi.dst() == f_tilde.src()) ||
      !(psi.dst() == f_tilde.dst())) {
    throw NonCommutingSquare("square does not fit together");
  }
  int lo = std::min({phi.lo(), psi.lo(), f.lo(), f_tilde.lo()});
  int hi = std::max({phi.hi(), psi.hi(), f.hi(), f_tilde.hi()});
  for (int n = lo; n <= hi; ++n) {
    if (psi.at(n) * f.at(n) != f_tilde.at(n) * phi.at(n)) {
      throw NonCommutingSquare("Psi f != f~ Phi in degree " + std::to_string(n));
    }
  }
  GradedComplex c = cone_of_map(f);
  GradedComplex ct = cone_of_map(f_tilde);
  std::map<int, QMatrix> m;
  for (const auto& [n, r] : c.ranks()) {
    (void)r;
    if (ct.rank(n) == 0) continue;
    m[n] = diag_blocks(phi.at(n - 1), psi.at(n));
  }
  return ComplexMap(c, ct, std::move(m));
}

// ------------------------------------------------------------------- duals

GradedComplex dual_complex(const GradedComplex& c) {
  if (c.ring().kind() != RingKind::Int && c.ring().kind() != RingKind::Rat) {
    throw UnsupportedRing("duals are built over Z and Q only, got " + c.ring().name());
  }
  std::map<int, std::size_t> ranks;
  for (const auto& [n, r] : c.ranks()) ranks[-n] = r;
  std::map<int, QMatrix> diff;
  for (int m = -c.hi(); m <= -c.lo() + 1; ++m) diff[m] = c.diff(1 - m).transpose();
  Grading g = c.grading() == Grading::Chain ? Grading::Cochain : Grading::Chain;
  return GradedComplex(c.ring(), std::move(ranks), std::move(diff), g);
}

ComplexMap dual_map(const ComplexMap& f) {
  GradedComplex xd = dual_complex(f.src());
  GradedComplex yd = dual_complex(f.dst());
  std::map<int, QMatrix> m;
  for (const auto& [n, mat] : f.matrices()) m[-n] = mat.transpose();
  return ComplexMap(yd, xd, std::move(m));
}

Scalar kronecker(const ConeElement& cochain, const ConeElement& chain, CoeffRing ring) {
  if (cochain.degree != chain.degree) {
    throw DegreeMismatch("pairing Cone^" + std::to_string(cochain.degree) + " with Cone_" +
                         std::to_string(chain.degree));
  }
  if (cochain.theta.size() != chain.theta.size() || cochain.eta.size() != chain.eta.size()) {
    throw ShapeMismatch("cone element components differ in size");
  }
  Rational v = 0;
  for (std::size_t i = 0; i < chain.theta.size(); ++i) v += cochain.theta[i] * chain.theta[i];
  for (std::size_t i = 0; i < chain.eta.size(); ++i) v -= cochain.eta[i] * chain.eta[i];
  return Scalar(ring, v);
}

DualityReport verify_cone_duality(const ComplexMap& f) {
  GradedComplex chain_cone = cone_of_map(f);
  ComplexMap fd = dual_map(f);
  GradedComplex cochain_cone = cone_of_cochain_map(fd);
  const GradedComplex& X = f.src();
  const GradedComplex& Y = f.dst();
  auto S = [&](int n) {
    QMatrix s = diag_blocks(QMatrix::identity(X.rank(n - 1)), -QMatrix::identity(Y.rank(n)));
    return (n % 2 == 0) ? s : -s;
  };
  DualityReport report;
  for (int n = chain_cone.lo() - 1; n <= chain_cone.hi(); ++n) {
    DualityDegree d;
    d.degree = n;
    if (cochain_cone.cochain_rank(n) != chain_cone.rank(n) ||
        cochain_cone.cochain_rank(n + 1) != chain_cone.rank(n + 1)) {
      d.nonzero = std::numeric_limits<std::size_t>::max();
    } else {
      QMatrix residual = cochain_cone.coboundary(n) - S(n + 1) * chain_cone.diff(n + 1).transpose() * S(n);
      for (std::size_t i = 0; i < residual.rows(); ++i)
        for (std::size_t j = 0; j < residual.cols(); ++j)
          if (residual(i, j) != 0) ++d.nonzero;
    }
    if (d.nonzero != 0) report.ok = false;
    report.degrees.push_back(d);
  }
  return report;
}

}  // namespace relcone
