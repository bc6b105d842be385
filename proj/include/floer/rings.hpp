#pragma once

// Coefficient rings: Z, Z/n, Q and prime fields F_p, with canonical elements.

#include <string>
#include <string_view>
#include <vector>

#include "floer/rational.hpp"

namespace floer {

class Ring {
 public:
  enum class Kind { Integers, IntegersMod, Rationals, PrimeField };

  static Ring integers() { return Ring(Kind::Integers, 0); }
  static Ring rationals() { return Ring(Kind::Rationals, 0); }
  /// n >= 2. Throws BadParams otherwise.
  static Ring integers_mod(const Integer& n);
  /// Rejects composite p with BadParams.
  static Ring prime_field(const Integer& p);

  /// "Z", "Z/<n>", "Q", "F<p>". Throws ParseError.
  static Ring parse(std::string_view name);

  Kind kind() const { return kind_; }
  /// n for Z/n, p for F_p, 0 otherwise.
  const Integer& modulus() const { return modulus_; }
  bool is_finite() const { return kind_ == Kind::IntegersMod || kind_ == Kind::PrimeField; }
  bool is_field() const { return kind_ == Kind::Rationals || kind_ == Kind::PrimeField; }

  std::string name() const;

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.kind_ == b.kind_ && a.modulus_ == b.modulus_;
  }

 private:
  Ring(Kind kind, Integer modulus) : kind_(kind), modulus_(std::move(modulus)) {}

  Kind kind_;
  Integer modulus_;
};

/// An element of a Ring in canonical form: residues in [0, n), reduced fractions,
/// or integers.
class RingElement {
 public:
  RingElement(const Ring& ring, const Integer& value);

  const Ring& ring() const { return ring_; }
  /// The canonical representative (an integer for every ring except Q).
  const Rational& value() const { return value_; }
  /// Integer representative; only valid outside Q (or for integral rationals).
  Integer integer_value() const;

  bool is_zero() const { return value_ == 0; }
  bool is_unit() const;
  RingElement inverse() const;  // throws NonInvertibleDenominator
  RingElement pow(long exponent) const;

  RingElement operator-() const;
  friend RingElement operator+(const RingElement& a, const RingElement& b);
  friend RingElement operator-(const RingElement& a, const RingElement& b);
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  RingElement& operator+=(const RingElement& b) { return *this = *this + b; }
  RingElement& operator*=(const RingElement& b) { return *this = *this * b; }

  friend bool operator==(const RingElement& a, const RingElement& b) {
    return a.ring_ == b.ring_ && a.value_ == b.value_;
  }

  std::string to_string() const { return floer::to_string(value_); }

 private:
  friend RingElement reduce(const Rational& x, const Ring& ring);
  RingElement(Ring ring, Rational canonical, int /*tag*/)
      : ring_(std::move(ring)), value_(std::move(canonical)) {}

  Ring ring_;
  Rational value_;
};

/// Canonical image of an integer or fraction. A fraction needs a denominator
/// invertible in the ring (NonInvertibleDenominator otherwise; over Z any
/// non-integral fraction is rejected the same way).
RingElement reduce(const Rational& x, const Ring& ring);
inline RingElement reduce(const Integer& x, const Ring& ring) { return RingElement(ring, x); }
inline RingElement reduce(long x, const Ring& ring) { return RingElement(ring, Integer(x)); }

/// Invertible elements of a finite ring, sorted by representative.
/// Throws InfiniteRing for Z and Q.
std::vector<RingElement> units_of(const Ring& ring);

}  // namespace floer
