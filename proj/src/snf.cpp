#include "relcone/snf.hpp"

#include <utility>

namespace relcone {

namespace {

// Working state for the reduction. Invariant: A = U * D * V,
// U_inv = U^{-1}, V_inv = V^{-1}.
struct Reducer {
  ZMatrix D, U, U_inv, V, V_inv;

  explicit Reducer(const ZMatrix& A)
      : D(A),
        U(ZMatrix::identity(A.rows())),
        U_inv(ZMatrix::identity(A.rows())),
        V(ZMatrix::identity(A.cols())),
        V_inv(ZMatrix::identity(A.cols())) {}

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < D.cols(); ++c) std::swap(D(i, c), D(j, c));
    for (std::size_t c = 0; c < U_inv.cols(); ++c) std::swap(U_inv(i, c), U_inv(j, c));
    for (std::size_t r = 0; r < U.rows(); ++r) std::swap(U(r, i), U(r, j));
  }

  // row_i += q * row_j
  void add_row(std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t c = 0; c < D.cols(); ++c) D(i, c) += q * D(j, c);
    for (std::size_t c = 0; c < U_inv.cols(); ++c) U_inv(i, c) += q * U_inv(j, c);
    for (std::size_t r = 0; r < U.rows(); ++r) U(r, j) -= q * U(r, i);
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < D.cols(); ++c) D(i, c) = -D(i, c);
    for (std::size_t c = 0; c < U_inv.cols(); ++c) U_inv(i, c) = -U_inv(i, c);
    for (std::size_t r = 0; r < U.rows(); ++r) U(r, i) = -U(r, i);
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < D.rows(); ++r) std::swap(D(r, i), D(r, j));
    for (std::size_t r = 0; r < V_inv.rows(); ++r) std::swap(V_inv(r, i), V_inv(r, j));
    for (std::size_t c = 0; c < V.cols(); ++c) std::swap(V(i, c), V(j, c));
  }

  // col_i += q * col_j
  void add_col(std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t r = 0; r < D.rows(); ++r) D(r, i) += q * D(r, j);
    for (std::size_t r = 0; r < V_inv.rows(); ++r) V_inv(r, i) += q * V_inv(r, j);
    for (std::size_t c = 0; c < V.cols(); ++c) V(j, c) -= q * V(i, c);
  }

  // Smallest |entry| in the block [t.., t..]; false when the block is zero.
  bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
    bool found = false;
    Integer best;
    for (std::size_t i = t; i < D.rows(); ++i) {
      for (std::size_t j = t; j < D.cols(); ++j) {
        if (D(i, j) == 0) continue;
        Integer a = abs(D(i, j));
        if (!found || a < best) {
          best = a;
          pi = i;
          pj = j;
          found = true;
        }
      }
    }
    return found;
  }

  void reduce() {
    const std::size_t limit = std::min(D.rows(), D.cols());
    for (std::size_t t = 0; t < limit; ++t) {
      std::size_t pi = 0, pj = 0;
      if (!find_pivot(t, pi, pj)) break;
      for (;;) {
        swap_rows(t, pi);
        swap_cols(t, pj);
        bool clean = true;
        for (std::size_t i = t + 1; i < D.rows(); ++i) {
          if (D(i, t) == 0) continue;
          Integer q = D(i, t) / D(t, t);
          if (q != 0) add_row(i, t, -q);
          if (D(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < D.cols(); ++j) {
          if (D(t, j) == 0) continue;
          Integer q = D(t, j) / D(t, t);
          if (q != 0) add_col(j, t, -q);
          if (D(t, j) != 0) clean = false;
        }
        if (clean) {
          // Divisibility: fold an offending row into the pivot row and retry.
          bool divides = true;
          for (std::size_t i = t + 1; i < D.rows() && divides; ++i) {
            for (std::size_t j = t + 1; j < D.cols(); ++j) {
              if (D(i, j) % D(t, t) != 0) {
                add_row(t, i, 1);
                divides = false;
                break;
              }
            }
          }
          if (divides) break;
        }
        find_pivot(t, pi, pj);
      }
      if (D(t, t) < 0) negate_row(t);
    }
  }
};

}  // namespace

std::vector<Integer> SNFResult::invariant_factors() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(D(i, i));
  return out;
}

SNFResult snf(const ZMatrix& A) {
  Reducer red(A);
  red.reduce();
  SNFResult r;
  r.rank = 0;
  const std::size_t limit = std::min(A.rows(), A.cols());
  while (r.rank < limit && red.D(r.rank, r.rank) != 0) ++r.rank;
  r.U = std::move(red.U);
  r.D = std::move(red.D);
  r.V = std::move(red.V);
  r.U_inv = std::move(red.U_inv);
  r.V_inv = std::move(red.V_inv);
#ifndef NDEBUG
  if (!snf_postconditions_hold(A, r)) throw std::logic_error("snf postcondition violated");
#endif
  return r;
}

bool snf_postconditions_hold(const ZMatrix& A, const SNFResult& r) {
  const std::size_t m = A.rows(), n = A.cols();
  if (r.U.rows() != m || r.U.cols() != m || r.V.rows() != n || r.V.cols() != n) return false;
  if (r.D.rows() != m || r.D.cols() != n) return false;
  if (r.U * r.D * r.V != A) return false;
  if (r.U * r.U_inv != ZMatrix::identity(m) || r.V * r.V_inv != ZMatrix::identity(n)) return false;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && r.D(i, j) != 0) return false;
    }
  }
  for (std::size_t i = 0; i < std::min(m, n); ++i) {
    const Integer& d = r.D(i, i);
    if (d < 0) return false;
    if ((i < r.rank) != (d != 0)) return false;
    if (i + 1 < r.rank && r.D(i + 1, i + 1) % d != 0) return false;
  }
  return true;
}

ZMatrix kernel_basis(const ZMatrix& A, const SNFResult& r) {
  const std::size_t n = A.cols();
  ZMatrix K(n, n - r.rank);
  for (std::size_t j = r.rank; j < n; ++j) K.set_column(j - r.rank, r.V_inv.column(j));
  return K;
}

ZMatrix kernel_basis(const ZMatrix& A) { return kernel_basis(A, snf(A)); }

std::optional<ZVector> solve_integer(const SNFResult& r, const ZVector& b) {
  ZVector c = r.U_inv * b;
  ZVector y(r.V.rows());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < r.rank) {
      const Integer& d = r.D(i, i);
      if (c[i] % d != 0) return std::nullopt;
      y[i] = c[i] / d;
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return r.V_inv * y;
}

std::optional<ZVector> solve_integer(const ZMatrix& A, const ZVector& b) {
  if (b.size() != A.rows()) throw ShapeMismatch("solve_integer right-hand side");
  return solve_integer(snf(A), b);
}

std::optional<QVector> solve_rational(const SNFResult& r, const QVector& b) {
  QVector c = to_rational(r.U_inv) * b;
  QVector y(r.V.rows());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < r.rank) {
      y[i] = c[i] / Rational(r.D(i, i));
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return to_rational(r.V_inv) * y;
}

std::optional<QVector> solve_rational(const ZMatrix& A, const QVector& b) {
  if (b.size() != A.rows()) throw ShapeMismatch("solve_rational right-hand side");
  return solve_rational(snf(A), b);
}

ZMatrix lattice_basis(const ZMatrix& G) {
  SNFResult r = snf(G);
  ZMatrix B(G.rows(), r.rank);
  for (std::size_t i = 0; i < r.rank; ++i) {
    for (std::size_t k = 0; k < G.rows(); ++k) B(k, i) = r.U(k, i) * r.D(i, i);
  }
  return B;
}

bool lattice_contains(const ZMatrix& G, const ZVector& v) { return solve_integer(G, v).has_value(); }

bool same_lattice(const ZMatrix& A, const ZMatrix& B, bool over_q) {
  if (A.rows() != B.rows()) throw ShapeMismatch("same_lattice ambient dimensions differ");
  if (over_q) {
    std::size_t ra = rank(A), rb = rank(B);
    return ra == rb && rank(hstack(A, B)) == ra;
  }
  SNFResult sa = snf(A), sb = snf(B);
  for (std::size_t j = 0; j < B.cols(); ++j)
    if (!solve_integer(sa, B.column(j))) return false;
  for (std::size_t j = 0; j < A.cols(); ++j)
    if (!solve_integer(sb, A.column(j))) return false;
  return true;
}

std::size_t rank(const ZMatrix& A) { return snf(A).rank; }

Integer determinant(const ZMatrix& A) {
  if (A.rows() != A.cols()) throw ShapeMismatch("determinant of non-square matrix");
  const std::size_t n = A.rows();
  if (n == 0) return 1;
  ZMatrix M = A;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && M(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(M(k, c), M(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
      }
    }
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

}  // namespace relcone
