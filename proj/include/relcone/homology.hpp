#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "relcone/chain.hpp"
#include "relcone/snf.hpp"

namespace relcone {

/// Finitely generated abelian group (or module over Z/m or Q): free rank,
/// torsion divisors d_1 | d_2 | ..., and one representative cycle per
/// generator, torsion generators first.
struct AbGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;
  std::vector<ZVector> generators;

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
};

/// Same free rank and torsion list.
bool isomorphic(const AbGroup& a, const AbGroup& b);

/// Z / B for lattices B <= Z inside an ambient Z^a, where Z is given by a
/// basis. Generators are chosen from the change of basis of the Smith form
/// of B expressed in Z-coordinates.
class Subquotient {
 public:
  enum class Mode {
    Integral,  ///< over Z
    Field,     ///< over Q: torsion is dropped, coordinates are rational
    Modular,   ///< over Z/m, realised as an integral subquotient containing m Z^a
  };

  Subquotient() = default;
  /// `cycles` must have full column rank; every column of `boundaries`
  /// must lie in its span (integral span unless Mode::Field).
  Subquotient(ZMatrix cycles, const QMatrix& boundaries, Mode mode, Integer modulus = 0);

  Mode mode() const { return mode_; }
  std::size_t ambient() const { return cycles_.rows(); }
  const ZMatrix& cycles() const { return cycles_; }
  /// Generators of the boundary lattice in ambient coordinates.
  const QMatrix& boundaries() const { return boundaries_; }
  /// Boundary lattice in Z-coordinates (columns).
  const ZMatrix& boundary_coords() const { return C_; }

  const AbGroup& group() const { return group_; }
  std::size_t ngens() const { return group_.generators.size(); }
  /// Order of each generator; 0 for infinite order.
  const std::vector<Integer>& orders() const { return orders_; }

  /// Z-coordinates a with cycles() * a = z. Throws NotACycle.
  QVector lattice_coords(const QVector& z) const;
  /// Coordinates of the class of z in the generator basis, reduced modulo
  /// each generator's order. Throws NotACycle.
  QVector coords(const QVector& z) const;
  bool is_boundary(const QVector& z) const;

 private:
  Mode mode_ = Mode::Integral;
  Integer modulus_ = 0;
  ZMatrix cycles_;
  SNFResult cycles_snf_;
  QMatrix boundaries_;
  ZMatrix C_;
  ZMatrix U_inv_;             // rows of the generator change of basis
  std::vector<std::size_t> kept_;  // SNF indices of the chosen generators
  std::vector<Integer> orders_;
  AbGroup group_;
};

/// H_n of a complex as a subquotient of its n-th chain group. Over Z/m
/// summands of order m count towards the free rank. Throws UnsupportedRing
/// for U1.
Subquotient homology_subquotient(const GradedComplex& c, int n);
AbGroup homology_at(const GradedComplex& c, int n);
/// H^p of a cochain complex (stored degree -p).
AbGroup cohomology_at(const GradedComplex& c, int p);
/// Every degree in [lo, hi]; degrees are computed concurrently up to
/// RELCONE_THREADS workers.
std::map<int, AbGroup> homology_all(const GradedComplex& c);

/// Matrix of H_n(f) in the generator bases of source and target.
QMatrix induced_map(const ComplexMap& f, int n);

/// delta: H_{n-1}(X) -> H_{n-1}(Y) from the short exact sequence
/// 0 -> Y -> Cone(f) -> X[-1] -> 0, computed by lifting gamma to
/// (gamma, 0) and taking the Y-part of its boundary.
QMatrix connecting_hom(const ComplexMap& f, int n);

struct LESTerm {
  std::string label;  ///< e.g. "H_1(f)"
  int degree = 0;
  AbGroup group;
};

struct LESPosition {
  std::size_t index = 0;  ///< position in LESReport::terms
  bool exact = true;
  std::size_t image_rank = 0;   ///< rank of im(incoming) in cycle coordinates
  std::size_t kernel_rank = 0;  ///< rank of ker(outgoing) in cycle coordinates
};

/// terms[0] -> terms[1] -> ... with maps[i]: terms[i] -> terms[i+1].
struct LESReport {
  std::vector<LESTerm> terms;
  std::vector<std::string> map_labels;
  std::vector<QMatrix> maps;
  std::vector<LESPosition> positions;

  bool exact() const;
};

/// ... -> H_n(X) -> H_n(Y) -> H_n(f) -> H_{n-1}(X) -> ... with
/// j(b) = (0, b) and k(a, b) = a. Exactness is decided by subgroup
/// equality, torsion included.
LESReport les_of_cone(const ComplexMap& f);

struct KerCokerReport {
  LESReport les;
  bool injective = false;
  bool surjective = false;
  /// H_n(f) = H_n(coker f) for injective f, H_n(f) = H_{n-1}(ker f) for
  /// surjective f, in every degree; true when neither applies.
  bool specialization_holds = true;
};

/// ... -> H_{n-1}(ker f) -> H_n(f) -> H_n(coker f) -> H_{n-2}(ker f) -> ...
/// Over Z and Q only.
KerCokerReport ker_coker_les(const ComplexMap& f);

bool quasi_iso(const ComplexMap& f);

struct FiveLemmaReport {
  ComplexMap cone_map;
  bool phi_quasi_iso = false;
  bool psi_quasi_iso = false;
  bool cone_map_quasi_iso = false;
};

/// Builds F: Cone(f) -> Cone(f~) from a commuting square and checks
/// whether F is a quasi-isomorphism. Throws NonCommutingSquare.
FiveLemmaReport five_lemma_transfer(const ComplexMap& phi, const ComplexMap& psi, const ComplexMap& f,
                                    const ComplexMap& f_tilde);

}  // namespace relcone
