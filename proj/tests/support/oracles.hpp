#pragma once

// Independent reference computations used only by tests. Nothing here
// calls the Smith normal form code it is meant to check.

#include <cstdint>
#include <vector>

#include "relcone/chain.hpp"

namespace oracle {

using relcone::Integer;
using relcone::QMatrix;
using relcone::ZMatrix;

/// Rank over Q by fraction-free elimination.
std::size_t rank_q(const ZMatrix& a);
std::size_t rank_q(const QMatrix& a);

/// Rank over F_p, p prime and small.
std::size_t rank_mod_p(const ZMatrix& a, std::uint64_t p);

/// Bareiss determinant.
Integer det(const ZMatrix& a);

/// k-th determinantal divisor: gcd of all k x k minors (1 for k = 0).
/// Exponential in size; meant for matrices up to about 6 x 6.
Integer determinantal_divisor(const ZMatrix& a, std::size_t k);

/// Invariant factors d_k = D_k / D_{k-1} from determinantal divisors.
std::vector<Integer> invariant_factors(const ZMatrix& a);

/// Betti number and the number of torsion summands of order divisible by p
/// in H_n of an integral complex, from ranks over Q and F_p alone.
struct HomologyShape {
  std::size_t betti = 0;
  std::size_t torsion_divisible_by_p = 0;
};
HomologyShape homology_shape(const relcone::GradedComplex& c, int n, std::uint64_t p);

/// Order of the torsion subgroup of H_n: product of invariant factors of
/// diff(n+1), computed through determinantal divisors.
Integer torsion_order(const relcone::GradedComplex& c, int n);

}  // namespace oracle
