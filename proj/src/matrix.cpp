#include "relcone/matrix.hpp"

namespace relcone {

QMatrix to_rational(const ZMatrix& m) {
  QMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

QVector to_rational(const ZVector& v) {
  QVector r;
  r.reserve(v.size());
  for (const auto& x : v) r.emplace_back(x);
  return r;
}

ZMatrix to_integer(const QMatrix& m) {
  ZMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw RingMismatch("non-integral entry " + m(i, j).get_str());
      r(i, j) = m(i, j).get_num();
    }
  }
  return r;
}

ZVector to_integer(const QVector& v) {
  ZVector r;
  r.reserve(v.size());
  for (const auto& x : v) {
    if (x.get_den() != 1) throw RingMismatch("non-integral entry " + x.get_str());
    r.push_back(x.get_num());
  }
  return r;
}

bool is_integral(const QMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j).get_den() != 1) return false;
  return true;
}

Integer denominator_lcm(const QVector& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

ZMatrix clear_denominators(const QMatrix& m) {
  Integer l = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
  ZMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational x = m(i, j) * Rational(l);
      r(i, j) = x.get_num();
    }
  }
  return r;
}

}  // namespace relcone
