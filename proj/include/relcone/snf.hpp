#pragma once

#include <optional>
#include <vector>

#include "relcone/matrix.hpp"

namespace relcone {

/// Smith normal form A = U * D * V with U, V unimodular and D diagonal,
/// nonnegative, d_1 | d_2 | ... . The inverses of U and V are tracked
/// alongside so callers never invert.
struct SNFResult {
  ZMatrix U, D, V;
  ZMatrix U_inv, V_inv;
  std::size_t rank = 0;

  /// Nonzero diagonal entries d_1, ..., d_rank.
  std::vector<Integer> invariant_factors() const;
};

/// Elementary row/column reduction with pivot = entry of minimal absolute
/// value in the remaining block. Postconditions are re-verified in debug
/// builds.
SNFResult snf(const ZMatrix& A);

/// Verifies every SNFResult postcondition exactly (factorisation, inverse
/// bookkeeping, diagonal shape, divisibility). Unimodularity follows from
/// U * U_inv = I over Z.
bool snf_postconditions_hold(const ZMatrix& A, const SNFResult& r);

/// Basis of the saturated kernel {x in Z^n : A x = 0}, as columns.
ZMatrix kernel_basis(const ZMatrix& A);
ZMatrix kernel_basis(const ZMatrix& A, const SNFResult& r);

/// Integer solution of A x = b, if one exists.
std::optional<ZVector> solve_integer(const ZMatrix& A, const ZVector& b);
std::optional<ZVector> solve_integer(const SNFResult& r, const ZVector& b);

/// Rational solution of A x = b, if one exists.
std::optional<QVector> solve_rational(const ZMatrix& A, const QVector& b);
std::optional<QVector> solve_rational(const SNFResult& r, const QVector& b);

/// Basis (full column rank) of the lattice spanned by the columns of G.
ZMatrix lattice_basis(const ZMatrix& G);

/// Columns of G span a lattice containing v.
bool lattice_contains(const ZMatrix& G, const ZVector& v);

/// Lattices spanned by the columns of A and of B coincide (over Z), or
/// their Q-spans coincide when `over_q`.
bool same_lattice(const ZMatrix& A, const ZMatrix& B, bool over_q = false);

std::size_t rank(const ZMatrix& A);

/// Fraction-free (Bareiss) determinant; independent of the SNF code path.
Integer determinant(const ZMatrix& A);

}  // namespace relcone
