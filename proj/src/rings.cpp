#include "floer/rings.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include "floer/error.hpp"

namespace floer {

namespace {

// Inverse of a modulo n, or nullopt when gcd(a, n) != 1.
std::optional<Integer> inverse_mod(const Integer& a, const Integer& n) {
  Integer r0 = n, r1 = floor_mod(a, n);
  Integer s0 = 0, s1 = 1;
  while (r1 != 0) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    Integer s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
  }
  if (r0 != 1) return std::nullopt;
  return floor_mod(s0, n);
}

}  // namespace

Ring Ring::integers_mod(const Integer& n) {
  if (n < 2) throw Error(ErrorCode::BadParams, "Z/n requires n >= 2, got " + n.str());
  return Ring(Kind::IntegersMod, n);
}

Ring Ring::prime_field(const Integer& p) {
  if (p < 2 || !boost::multiprecision::miller_rabin_test(p, 25)) {
    throw Error(ErrorCode::BadParams, "F<p> requires a prime, got " + p.str());
  }
  return Ring(Kind::PrimeField, p);
}

Ring Ring::parse(std::string_view name) {
  if (name == "Z") return integers();
  if (name == "Q") return rationals();
  try {
    if (name.starts_with("Z/")) return integers_mod(parse_integer(name.substr(2)));
    if (name.starts_with("F") && name.size() > 1) return prime_field(parse_integer(name.substr(1)));
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, "bad ring '" + std::string(name) + "': " + e.detail());
  }
  throw Error(ErrorCode::ParseError, "unknown ring '" + std::string(name) + "' (expected Z, Z/<n>, Q, F<p>)");
}

std::string Ring::name() const {
  switch (kind_) {
    case Kind::Integers: return "Z";
    case Kind::Rationals: return "Q";
    case Kind::IntegersMod: return "Z/" + modulus_.str();
    case Kind::PrimeField: return "F" + modulus_.str();
  }
  return "?";
}

RingElement::RingElement(const Ring& ring, const Integer& value)
    : ring_(ring), value_(ring.is_finite() ? floor_mod(value, ring.modulus()) : value) {}

Integer RingElement::integer_value() const {
  if (denominator(value_) != 1) throw std::logic_error("integer_value() of a non-integral rational");
  return numerator(value_);
}

bool RingElement::is_unit() const {
  switch (ring_.kind()) {
    case Ring::Kind::Integers: return value_ == 1 || value_ == -1;
    case Ring::Kind::Rationals:
    case Ring::Kind::PrimeField: return value_ != 0;
    case Ring::Kind::IntegersMod: return inverse_mod(integer_value(), ring_.modulus()).has_value();
  }
  return false;
}

RingElement RingElement::inverse() const {
  if (ring_.kind() == Ring::Kind::Rationals) {
    if (value_ == 0) throw Error(ErrorCode::NonInvertibleDenominator, "0 has no inverse");
    return reduce(Rational(1) / value_, ring_);
  }
  if (ring_.kind() == Ring::Kind::Integers) {
    if (!is_unit()) throw Error(ErrorCode::NonInvertibleDenominator, to_string() + " is not a unit in Z");
    return *this;
  }
  auto inv = inverse_mod(integer_value(), ring_.modulus());
  if (!inv) throw Error(ErrorCode::NonInvertibleDenominator, to_string() + " is not a unit in " + ring_.name());
  return RingElement(ring_, *inv);
}

RingElement RingElement::pow(long exponent) const {
  RingElement base = exponent < 0 ? inverse() : *this;
  unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
  RingElement result = reduce(1L, ring_);
  while (e != 0) {
    if (e & 1UL) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

RingElement RingElement::operator-() const { return reduce(Rational(-value_), ring_); }

RingElement operator+(const RingElement& a, const RingElement& b) {
  return reduce(a.value_ + b.value_, a.ring_);
}

RingElement operator-(const RingElement& a, const RingElement& b) {
  return reduce(a.value_ - b.value_, a.ring_);
}

RingElement operator*(const RingElement& a, const RingElement& b) {
  return reduce(a.value_ * b.value_, a.ring_);
}

RingElement reduce(const Rational& x, const Ring& ring) {
  const Integer num = numerator(x);
  const Integer den = denominator(x);
  switch (ring.kind()) {
    case Ring::Kind::Rationals:
      return RingElement(ring, x, 0);
    case Ring::Kind::Integers:
      if (den != 1) {
        throw Error(ErrorCode::NonInvertibleDenominator, to_string(x) + " is not an integer");
      }
      return RingElement(ring, Rational(num), 0);
    case Ring::Kind::IntegersMod:
    case Ring::Kind::PrimeField: {
      auto inv = inverse_mod(den, ring.modulus());
      if (!inv) {
        throw Error(ErrorCode::NonInvertibleDenominator,
                    "denominator of " + to_string(x) + " is a zero divisor in " + ring.name());
      }
      return RingElement(ring, Rational(floor_mod(num * *inv, ring.modulus())), 0);
    }
  }
  throw std::logic_error("unreachable ring kind");
}

std::vector<RingElement> units_of(const Ring& ring) {
  if (!ring.is_finite()) throw Error(ErrorCode::InfiniteRing, ring.name() + " has infinitely many units");
  std::vector<RingElement> out;
  for (Integer x = 1; x < ring.modulus(); ++x) {
    if (inverse_mod(x, ring.modulus())) out.emplace_back(ring, x);
  }
  return out;
}

}  // namespace floer
