#include "relcone/coeffs.hpp"

#include <ostream>

#include "relcone/error.hpp"

namespace relcone {

CoeffRing CoeffRing::mod(const Integer& n) {
  if (n < 1) throw RingMismatch("IntMod requires a modulus >= 1, got " + n.get_str());
  return CoeffRing(RingKind::IntMod, n);
}

CoeffRing CoeffRing::parse(const std::string& text) {
  if (text == "Z") return integers();
  if (text == "Q") return rationals();
  if (text == "U1") return angles();
  const std::string prefix = "Zmod:";
  if (text.rfind(prefix, 0) == 0) {
    Integer n;
    if (n.set_str(text.substr(prefix.size()), 10) != 0) {
      throw ParseError("bad modulus in ring '" + text + "'");
    }
    return mod(n);
  }
  throw ParseError("unknown ring '" + text + "' (expected Z, Q, Zmod:n or U1)");
}

bool CoeffRing::is_field() const {
  if (kind_ == RingKind::Rat) return true;
  if (kind_ == RingKind::IntMod) return mpz_probab_prime_p(modulus_.get_mpz_t(), 30) != 0;
  return false;
}

std::string CoeffRing::name() const {
  switch (kind_) {
    case RingKind::Int: return "Z";
    case RingKind::Rat: return "Q";
    case RingKind::IntMod: return "Zmod:" + modulus_.get_str();
    case RingKind::AngleQ: return "U1";
  }
  return "?";
}

Rational frac(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  Rational r = x - Rational(q);
  r.canonicalize();
  return r;
}

Rational CoeffRing::normalize(const Rational& x) const {
  switch (kind_) {
    case RingKind::Rat:
      return x;
    case RingKind::AngleQ:
      return frac(x);
    case RingKind::Int:
      if (x.get_den() != 1) throw RingMismatch("non-integral value " + x.get_str() + " in Z");
      return x;
    case RingKind::IntMod: {
      if (x.get_den() != 1) throw RingMismatch("non-integral value " + x.get_str() + " in " + name());
      Integer r;
      mpz_fdiv_r(r.get_mpz_t(), x.get_num_mpz_t(), modulus_.get_mpz_t());
      return Rational(r);
    }
  }
  return x;
}

Scalar::Scalar(CoeffRing ring, const Rational& value) : ring_(ring), value_(ring.normalize(value)) {}

namespace {
void require_same(const Scalar& a, const Scalar& b) {
  if (a.ring() != b.ring()) {
    throw RingMismatch(a.ring().name() + " vs " + b.ring().name());
  }
}
}  // namespace

Scalar add(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  return Scalar(a.ring(), a.value() + b.value());
}

Scalar neg(const Scalar& a) { return Scalar(a.ring(), -a.value()); }

Scalar sub(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  return Scalar(a.ring(), a.value() - b.value());
}

Scalar mul(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  if (a.ring().kind() == RingKind::AngleQ) throw MulOnAngleQ("U1 is only a group");
  return Scalar(a.ring(), a.value() * b.value());
}

Scalar scale(const Integer& k, const Scalar& a) { return Scalar(a.ring(), Rational(k) * a.value()); }

Scalar angle_lift(const Scalar& a) {
  if (a.ring().kind() != RingKind::AngleQ) {
    throw RingMismatch("angle_lift expects U1, got " + a.ring().name());
  }
  return Scalar(CoeffRing::rationals(), a.value());
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.value().get_str() << " [" << s.ring().name() << "]";
}

}  // namespace relcone
