#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace relcone {

using Integer = mpz_class;
using Rational = mpq_class;

enum class RingKind { Int, Rat, IntMod, AngleQ };

/// Coefficient ring tag. `AngleQ` is the additive group Q/Z standing in for
/// U(1) through x -> exp(2 pi i x); it has no multiplication.
class CoeffRing {
 public:
  CoeffRing() = default;

  static CoeffRing integers() { return CoeffRing(RingKind::Int, 0); }
  static CoeffRing rationals() { return CoeffRing(RingKind::Rat, 0); }
  static CoeffRing mod(const Integer& n);
  static CoeffRing angles() { return CoeffRing(RingKind::AngleQ, 0); }

  /// Parses "Z", "Q", "Zmod:n" and "U1".
  static CoeffRing parse(const std::string& text);

  RingKind kind() const { return kind_; }
  const Integer& modulus() const { return modulus_; }
  bool is_field() const;
  std::string name() const;

  /// Canonical representative of `x` in this ring. Throws RingMismatch when
  /// `x` is not integral and the ring only holds integers.
  Rational normalize(const Rational& x) const;

  friend bool operator==(const CoeffRing& a, const CoeffRing& b) {
    return a.kind_ == b.kind_ && a.modulus_ == b.modulus_;
  }
  friend bool operator!=(const CoeffRing& a, const CoeffRing& b) { return !(a == b); }

 private:
  CoeffRing(RingKind kind, const Integer& modulus) : kind_(kind), modulus_(modulus) {}

  RingKind kind_ = RingKind::Int;
  Integer modulus_ = 0;
};

/// An exact element of a CoeffRing. Immutable.
class Scalar {
 public:
  Scalar() = default;
  Scalar(CoeffRing ring, const Rational& value);

  static Scalar zero(CoeffRing ring) { return Scalar(ring, 0); }

  const CoeffRing& ring() const { return ring_; }
  const Rational& value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.ring_ == b.ring_ && a.value_ == b.value_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

 private:
  CoeffRing ring_;
  Rational value_ = 0;
};

Scalar add(const Scalar& a, const Scalar& b);
Scalar neg(const Scalar& a);
Scalar sub(const Scalar& a, const Scalar& b);
Scalar mul(const Scalar& a, const Scalar& b);

/// Integer multiple `k * a`; defined for every ring including AngleQ.
Scalar scale(const Integer& k, const Scalar& a);

/// Set-level section of exp: the representative of an angle in [0, 1).
Scalar angle_lift(const Scalar& a);

/// Reduce a rational modulo 1 into [0, 1).
Rational frac(const Rational& x);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace relcone
