#pragma once

#include <map>
#include <string>
#include <vector>

#include "relcone/coeffs.hpp"
#include "relcone/matrix.hpp"

namespace relcone {

/// Storage orientation. Cochain complexes are stored reindexed as chain
/// complexes: stored degree m holds cochain degree -m, and the stored
/// differential diff(m) is the coboundary d^{-m}.
enum class Grading { Chain, Cochain };

/// Finitely supported graded free module with a square-zero differential.
/// diff(n) has shape rank(n-1) x rank(n).
class GradedComplex {
 public:
  GradedComplex() = default;
  /// Throws ShapeMismatch on inconsistent shapes, RingMismatch on
  /// non-integral entries over Z, Z/n or U1, and InvalidComplex when
  /// diff(n-1) * diff(n) != 0.
  GradedComplex(CoeffRing ring, std::map<int, std::size_t> ranks, std::map<int, QMatrix> diff,
                Grading grading = Grading::Chain);

  /// Builds a cochain complex from ranks and coboundaries d^p: X^p -> X^{p+1}
  /// indexed by cochain degree.
  static GradedComplex from_cochains(CoeffRing ring, const std::map<int, std::size_t>& ranks,
                                     const std::map<int, QMatrix>& coboundaries);

  const CoeffRing& ring() const { return ring_; }
  Grading grading() const { return grading_; }
  GradedComplex with_ring(CoeffRing ring) const;
  /// Same data with the orientation tag replaced; no reindexing happens.
  GradedComplex with_grading(Grading g) const;

  std::size_t rank(int n) const;
  QMatrix diff(int n) const;
  const std::map<int, std::size_t>& ranks() const { return ranks_; }

  /// Smallest and largest stored degree with nonzero rank; lo > hi when empty.
  int lo() const;
  int hi() const;
  bool empty() const { return lo() > hi(); }

  /// Cochain view: X^p and d^p, valid for Grading::Cochain.
  std::size_t cochain_rank(int p) const { return rank(-p); }
  QMatrix coboundary(int p) const { return diff(-p); }

  bool square_zero() const;

  friend bool operator==(const GradedComplex& a, const GradedComplex& b);

 private:
  CoeffRing ring_;
  Grading grading_ = Grading::Chain;
  std::map<int, std::size_t> ranks_;
  std::map<int, QMatrix> diff_;
};

/// Degreewise matrices src(n) -> dst(n), shape rank_dst(n) x rank_src(n).
class ComplexMap {
 public:
  ComplexMap() = default;
  ComplexMap(GradedComplex src, GradedComplex dst, std::map<int, QMatrix> mat);

  static ComplexMap identity(const GradedComplex& c);
  static ComplexMap zero(const GradedComplex& src, const GradedComplex& dst);

  const GradedComplex& src() const { return src_; }
  const GradedComplex& dst() const { return dst_; }
  QMatrix at(int n) const;
  const std::map<int, QMatrix>& matrices() const { return mat_; }

  /// diff_dst * f == f * diff_src in every degree (mod n over Z/n).
  bool is_chain_map() const;

  int lo() const;
  int hi() const;

 private:
  GradedComplex src_, dst_;
  std::map<int, QMatrix> mat_;
};

ComplexMap compose(const ComplexMap& g, const ComplexMap& f);
ComplexMap operator+(const ComplexMap& a, const ComplexMap& b);
ComplexMap operator-(const ComplexMap& a, const ComplexMap& b);

/// Chain homotopy h: X_n -> Y_{n+1} with h d + d h = f - g.
struct Homotopy {
  ComplexMap f, g;
  std::map<int, QMatrix> h;

  QMatrix at(int n) const;
  bool is_valid() const;
};

/// f := g + h d + d h, the map homotopic to g through h.
ComplexMap homotopic_map(const ComplexMap& g, const std::map<int, QMatrix>& h);

/// Element (theta, eta) of Cone_n = X_{n-1} + Y_n; for cochain cones the
/// pair (alpha, beta) of Cone^n = Y^{n-1} + X^n.
struct ConeElement {
  int degree = 0;
  QVector theta;
  QVector eta;

  QVector flatten() const;
  static ConeElement split(int degree, const QVector& v, std::size_t theta_size);
};

/// Cone_n(f) = X_{n-1} + Y_n with d(theta, eta) = (d theta, f(theta) - d eta).
GradedComplex cone_of_map(const ComplexMap& f);

/// Cone^n(f) = Y^{n-1} + X^n with d(alpha, beta) = (f(beta) - d alpha, d beta),
/// for f between cochain-graded complexes. The stored (reindexed) result
/// in degree m equals the chain cone of the stored map in degree m+1 with
/// its two summands swapped.
GradedComplex cone_of_cochain_map(const ComplexMap& f);

/// The block permutation (alpha, beta) -> (beta, alpha) identifying stored
/// degree m of cone_of_cochain_map(f) with degree m+1 of cone_of_map(f).
QMatrix cochain_cone_reindexing(const ComplexMap& f, int stored_degree);

/// F(alpha, beta) = (alpha, -h(alpha) + beta): Cone(f) -> Cone(g).
/// Throws InvalidHomotopy.
ComplexMap homotopy_cone_iso(const Homotopy& h);
/// The inverse (alpha, beta) -> (alpha, h(alpha) + beta).
ComplexMap homotopy_cone_iso_inverse(const Homotopy& h);

/// (alpha, beta) -> (Phi alpha, Psi beta): Cone(f) -> Cone(f~) for a
/// commuting square Psi f = f~ Phi. Throws NonCommutingSquare.
ComplexMap cone_map_of_square(const ComplexMap& phi, const ComplexMap& psi, const ComplexMap& f,
                              const ComplexMap& f_tilde);

/// Hom(-, R) dual: flips the grading tag, rank(m) <- rank(-m) and
/// diff(m) <- diff(1-m)^T. Only over Z and Q (UnsupportedRing otherwise).
GradedComplex dual_complex(const GradedComplex& c);
/// f': Y' -> X' with matrices f(-m)^T.
ComplexMap dual_map(const ComplexMap& f);

/// <(alpha, beta), (theta, eta)> = <alpha, theta> - <beta, eta>.
/// Throws DegreeMismatch or ShapeMismatch.
Scalar kronecker(const ConeElement& cochain, const ConeElement& chain, CoeffRing ring);

struct DualityDegree {
  int degree = 0;           ///< cochain degree n of Cone^n(f')
  std::size_t nonzero = 0;  ///< number of nonzero residual entries
};

struct DualityReport {
  bool ok = true;
  std::vector<DualityDegree> degrees;
};

/// Compares the coboundary of cone_of_cochain_map(dual_map(f)) with the
/// transposed boundary of cone_of_map(f). The identification of
/// Cone^n(f') with Hom(Cone_n(f), R) is S_n = (-1)^n diag(I, -I); the
/// residual is d^n - S_{n+1} d_{n+1}^T S_n.
DualityReport verify_cone_duality(const ComplexMap& f);

}  // namespace relcone
