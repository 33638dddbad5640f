#include "oracles.hpp"

#include <functional>
#include <numeric>

namespace oracle {

namespace {

// Row echelon over Q on a copy; returns rank.
std::size_t eliminate(std::vector<std::vector<relcone::Rational>> m, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      relcone::Rational q = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= q * m[r][j];
    }
    ++r;
  }
  return r;
}

void minors(const ZMatrix& a, std::size_t k, std::vector<std::size_t>& rows, std::size_t r0, Integer& g) {
  if (rows.size() == k) {
    std::vector<std::size_t> cols;
    std::function<void(std::size_t)> pick = [&](std::size_t c0) {
      if (cols.size() == k) {
        ZMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(rows[i], cols[j]);
        Integer d = det(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
        return;
      }
      for (std::size_t c = c0; c < a.cols(); ++c) {
        cols.push_back(c);
        pick(c + 1);
        cols.pop_back();
      }
    };
    pick(0);
    return;
  }
  for (std::size_t r = r0; r < a.rows(); ++r) {
    rows.push_back(r);
    minors(a, k, rows, r + 1, g);
    rows.pop_back();
  }
}

}  // namespace

std::size_t rank_q(const QMatrix& a) {
  std::vector<std::vector<relcone::Rational>> m(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) m[i] = a.row(i);
  return eliminate(std::move(m), a.cols());
}

std::size_t rank_q(const ZMatrix& a) { return rank_q(relcone::to_rational(a)); }

std::size_t rank_mod_p(const ZMatrix& a, std::uint64_t p) {
  std::vector<std::vector<std::uint64_t>> m(a.rows(), std::vector<std::uint64_t>(a.cols()));
  const Integer pz(static_cast<unsigned long>(p));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Integer r;
      mpz_fdiv_r(r.get_mpz_t(), a(i, j).get_mpz_t(), pz.get_mpz_t());
      m[i][j] = r.get_ui();
    }
  }
  auto inv = [p](std::uint64_t x) {
    std::uint64_t result = 1, e = p - 2;
    while (e) {
      if (e & 1) result = result * x % p;
      x = x * x % p;
      e >>= 1;
    }
    return result;
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    std::uint64_t iv = inv(m[r][c]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      std::uint64_t q = m[i][c] * iv % p;
      for (std::size_t j = c; j < a.cols(); ++j) m[i][j] = (m[i][j] + (p - q) * m[r][j]) % p;
    }
    ++r;
  }
  return r;
}

Integer det(const ZMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  ZMatrix m = a;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Integer determinantal_divisor(const ZMatrix& a, std::size_t k) {
  if (k == 0) return 1;
  Integer g = 0;
  std::vector<std::size_t> rows;
  minors(a, k, rows, 0, g);
  return g;
}

std::vector<Integer> invariant_factors(const ZMatrix& a) {
  std::vector<Integer> out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(a.rows(), a.cols()); ++k) {
    Integer dk = determinantal_divisor(a, k);
    if (dk == 0) break;
    out.push_back(dk / prev);
    prev = dk;
  }
  return out;
}

HomologyShape homology_shape(const relcone::GradedComplex& c, int n, std::uint64_t p) {
  ZMatrix dn = relcone::to_integer(c.diff(n));
  ZMatrix up = relcone::to_integer(c.diff(n + 1));
  HomologyShape s;
  const std::size_t rq_n = rank_q(dn), rq_up = rank_q(up);
  s.betti = c.rank(n) - rq_n - rq_up;
  s.torsion_divisible_by_p = rq_up - rank_mod_p(up, p);
  return s;
}

Integer torsion_order(const relcone::GradedComplex& c, int n) {
  Integer order = 1;
  for (const auto& d : invariant_factors(relcone::to_integer(c.diff(n + 1)))) order *= d;
  return order;
}

}  // namespace oracle
