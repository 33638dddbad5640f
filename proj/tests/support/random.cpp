#include "random.hpp"

#include <algorithm>

#include "relcone/snf.hpp"

namespace gen {

using relcone::Integer;
using relcone::Rational;
using relcone::ZVector;

namespace {

Integer dot(const ZVector& a, const ZVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Pairwise size reduction; cheap stand-in for LLL, good enough to keep
// kernel vectors short on desk-scale inputs.
std::vector<ZVector> size_reduce(const ZMatrix& k) {
  std::vector<ZVector> cols;
  for (std::size_t j = 0; j < k.cols(); ++j) cols.push_back(k.column(j));
  for (int round = 0; round < 50; ++round) {
    bool changed = false;
    std::sort(cols.begin(), cols.end(), [](const ZVector& a, const ZVector& b) { return dot(a, a) < dot(b, b); });
    for (std::size_t i = 0; i < cols.size(); ++i) {
      for (std::size_t j = 0; j < cols.size(); ++j) {
        if (i == j) continue;
        Integer nj = dot(cols[j], cols[j]);
        if (nj == 0) continue;
        Rational q(dot(cols[i], cols[j]), nj);
        Integer r;
        mpz_fdiv_q(r.get_mpz_t(), Rational(q + Rational(1, 2)).get_num_mpz_t(),
                   Rational(q + Rational(1, 2)).get_den_mpz_t());
        if (r == 0) continue;
        ZVector cand = cols[i];
        for (std::size_t t = 0; t < cand.size(); ++t) cand[t] -= r * cols[j][t];
        if (dot(cand, cand) < dot(cols[i], cols[i])) {
          cols[i] = std::move(cand);
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return cols;
}

bool within(const ZVector& v, int bound) {
  return std::all_of(v.begin(), v.end(), [bound](const Integer& x) { return abs(x) <= bound; });
}

// Small random combination of lattice vectors bounded entrywise; zero when
// the attempts run out.
ZVector small_combination(Rng& rng, const std::vector<ZVector>& basis, std::size_t dim, int bound) {
  for (int attempt = 0; attempt < 40; ++attempt) {
    ZVector v(dim);
    for (const auto& b : basis) {
      int c = rng.uniform(-1, 1);
      if (attempt % 4 == 0 && rng.uniform(0, 5) == 0) c *= 2;
      for (std::size_t t = 0; t < dim; ++t) v[t] += c * b[t];
    }
    if (within(v, bound)) return v;
  }
  return ZVector(dim);
}

ZMatrix unimodular(Rng& rng, std::size_t n, ZMatrix& inverse) {
  ZMatrix u = ZMatrix::identity(n);
  inverse = ZMatrix::identity(n);
  if (n < 2) return u;
  for (int step = 0; step < 4; ++step) {
    std::size_t i = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(n) - 1));
    std::size_t j = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(n) - 1));
    if (i == j) continue;
    int q = rng.coin() ? 1 : -1;
    // u <- E u with E = I + q e_ij (row_i += q row_j); inverse <- inverse E^{-1}.
    for (std::size_t c = 0; c < n; ++c) u(i, c) += q * u(j, c);
    for (std::size_t r = 0; r < n; ++r) inverse(r, j) -= q * inverse(r, i);
  }
  return u;
}

}  // namespace

QMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int bound) {
  QMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.uniform(-bound, bound);
  return m;
}

GradedComplex random_complex(Rng& rng, int lo, int hi, std::size_t max_rank, int bound) {
  std::map<int, std::size_t> ranks;
  for (int n = lo; n <= hi; ++n) ranks[n] = static_cast<std::size_t>(rng.uniform(1, static_cast<int>(max_rank)));
  std::map<int, QMatrix> diff;
  for (int n = lo + 1; n <= hi; ++n) {
    if (n == lo + 1) {
      // Sparse first differential so that later kernels stay nontrivial.
      QMatrix m = random_matrix(rng, ranks[n - 1], ranks[n], bound);
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
          if (rng.uniform(0, 2) == 0) m(i, j) = 0;
      diff[n] = m;
      continue;
    }
    ZMatrix below = relcone::to_integer(diff[n - 1]);
    std::vector<ZVector> basis = size_reduce(relcone::kernel_basis(below));
    QMatrix m(ranks[n - 1], ranks[n]);
    for (std::size_t j = 0; j < ranks[n]; ++j) {
      m.set_column(j, relcone::to_rational(small_combination(rng, basis, ranks[n - 1], bound)));
    }
    diff[n] = m;
  }
  return GradedComplex(relcone::CoeffRing::integers(), ranks, diff);
}

ComplexMap random_chain_map(Rng& rng, const GradedComplex& X, const GradedComplex& Y, int bound) {
  // Unknowns: entries of f_n for every degree where both sides are nonzero.
  struct Block {
    int n;
    std::size_t offset, rows, cols;
  };
  std::vector<Block> blocks;
  std::size_t unknowns = 0;
  for (const auto& [n, r] : X.ranks()) {
    std::size_t y = Y.rank(n);
    if (y == 0) continue;
    blocks.push_back({n, unknowns, y, r});
    unknowns += y * r;
  }
  if (unknowns == 0) return ComplexMap::zero(X, Y);
  auto find = [&](int n) -> const Block* {
    for (const auto& b : blocks)
      if (b.n == n) return &b;
    return nullptr;
  };
  // One equation per entry of dY_n f_n - f_{n-1} dX_n.
  std::vector<ZVector> eqs;
  const int lo = std::min(X.lo(), Y.lo()), hi = std::max(X.hi(), Y.hi()) + 1;
  for (int n = lo; n <= hi; ++n) {
    const std::size_t rows = Y.rank(n - 1), cols = X.rank(n);
    if (rows == 0 || cols == 0) continue;
    const QMatrix dy = Y.diff(n), dx = X.diff(n);
    const Block* top = find(n);
    const Block* low = find(n - 1);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        ZVector e(unknowns);
        if (top)
          for (std::size_t k = 0; k < top->rows; ++k) e[top->offset + k * top->cols + j] += dy(i, k).get_num();
        if (low)
          for (std::size_t k = 0; k < low->cols; ++k) e[low->offset + i * low->cols + k] -= dx(k, j).get_num();
        eqs.push_back(std::move(e));
      }
    }
  }
  ZMatrix system(eqs.size(), unknowns);
  for (std::size_t r = 0; r < eqs.size(); ++r)
    for (std::size_t c = 0; c < unknowns; ++c) system(r, c) = eqs[r][c];
  std::vector<ZVector> basis = size_reduce(relcone::kernel_basis(system));
  ZVector v = small_combination(rng, basis, unknowns, bound);
  std::map<int, QMatrix> mat;
  for (const auto& b : blocks) {
    QMatrix m(b.rows, b.cols);
    for (std::size_t i = 0; i < b.rows; ++i)
      for (std::size_t j = 0; j < b.cols; ++j) m(i, j) = v[b.offset + i * b.cols + j];
    mat[b.n] = m;
  }
  return ComplexMap(X, Y, mat);
}

std::map<int, QMatrix> random_homotopy(Rng& rng, const GradedComplex& X, const GradedComplex& Y, int bound) {
  std::map<int, QMatrix> h;
  for (const auto& [n, r] : X.ranks()) {
    if (Y.rank(n + 1) == 0) continue;
    h[n] = random_matrix(rng, Y.rank(n + 1), r, bound);
  }
  return h;
}

BaseChange random_base_change(Rng& rng, const GradedComplex& c) {
  std::map<int, ZMatrix> p, pinv;
  for (const auto& [n, r] : c.ranks()) {
    ZMatrix inv;
    p[n] = unimodular(rng, r, inv);
    pinv[n] = inv;
  }
  std::map<int, QMatrix> diff;
  for (int n = c.lo() + 1; n <= c.hi(); ++n) {
    diff[n] = relcone::to_rational(p[n - 1]) * c.diff(n) * relcone::to_rational(pinv[n]);
  }
  GradedComplex out(c.ring(), c.ranks(), diff, c.grading());
  std::map<int, QMatrix> fwd, back;
  for (const auto& [n, m] : p) fwd[n] = relcone::to_rational(m);
  for (const auto& [n, m] : pinv) back[n] = relcone::to_rational(m);
  return {out, ComplexMap(c, out, fwd), ComplexMap(out, c, back)};
}

GradedComplex direct_sum(const GradedComplex& a, const GradedComplex& b) {
  std::map<int, std::size_t> ranks;
  for (const auto& [n, r] : a.ranks()) ranks[n] += r;
  for (const auto& [n, r] : b.ranks()) ranks[n] += r;
  std::map<int, QMatrix> diff;
  for (const auto& [n, r] : ranks) {
    (void)r;
    QMatrix da = a.diff(n), db = b.diff(n);
    diff[n] = relcone::block2x2(da, QMatrix(da.rows(), db.cols()), QMatrix(db.rows(), da.cols()), db);
  }
  return GradedComplex(a.ring(), ranks, diff, a.grading());
}

ComplexMap random_injection(Rng& rng, const GradedComplex& c, std::size_t max_rank) {
  GradedComplex w = random_complex(rng, c.lo(), c.hi(), max_rank, 2);
  GradedComplex sum = direct_sum(c, w);
  const int k = rng.uniform(1, 3);
  std::map<int, QMatrix> inc;
  for (const auto& [n, r] : c.ranks()) {
    QMatrix m(sum.rank(n), r);
    for (std::size_t i = 0; i < r; ++i) m(i, i) = k;
    inc[n] = m;
  }
  ComplexMap f(c, sum, inc);
  BaseChange bc = random_base_change(rng, sum);
  return relcone::compose(bc.iso, f);
}

ComplexMap random_surjection(Rng& rng, const GradedComplex& c, std::size_t max_rank) {
  GradedComplex w = random_complex(rng, c.lo(), c.hi(), max_rank, 2);
  GradedComplex sum = direct_sum(c, w);
  std::map<int, QMatrix> proj;
  for (const auto& [n, r] : c.ranks()) {
    QMatrix m(r, sum.rank(n));
    for (std::size_t i = 0; i < r; ++i) m(i, i) = 1;
    proj[n] = m;
  }
  ComplexMap f(sum, c, proj);
  BaseChange bc = random_base_change(rng, sum);
  return relcone::compose(f, bc.inverse);
}

}  // namespace gen
