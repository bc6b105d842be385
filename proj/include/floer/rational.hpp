#pragma once

// Arbitrary-precision integers and exact rationals, plus the "rational or +inf"
// type used for area thresholds.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace floer {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

/// Parses "p/q" or "p" (optional leading sign). Decimal notation is rejected.
/// Throws Error(ParseError).
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

/// "p/q" in lowest terms with q > 0, or "p" when q = 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& n);

Integer floor_mod(const Integer& a, const Integer& n);
Integer abs(const Integer& a);

/// A rational number or +infinity.
class ExtendedRational {
 public:
  ExtendedRational() = default;  // +inf
  ExtendedRational(Rational value) : value_(std::move(value)) {}  // NOLINT(implicit)
  ExtendedRational(int value) : value_(Rational(value)) {}        // NOLINT(implicit)

  static ExtendedRational infinity() { return {}; }

  bool is_infinite() const { return !value_.has_value(); }
  const Rational& value() const;

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b);

 private:
  std::optional<Rational> value_;
};

ExtendedRational min(const ExtendedRational& a, const ExtendedRational& b);
std::string to_string(const ExtendedRational& q);  // "inf" for +infinity

}  // namespace floer
