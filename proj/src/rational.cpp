#include "floer/rational.hpp"

#include <cctype>

#include "floer/error.hpp"

namespace floer {

namespace {

std::string_view strip_sign(std::string_view text, bool& negative) {
  negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  } else if (text.starts_with("\xE2\x88\x92")) {  // U+2212 MINUS SIGN
    negative = true;
    text.remove_prefix(3);
  }
  return text;
}

Integer parse_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw Error(ErrorCode::ParseError, "empty number in '" + std::string(whole) + "'");
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw Error(ErrorCode::ParseError,
                  "expected an exact integer or p/q, got '" + std::string(whole) + "'");
    }
  }
  return Integer(std::string(digits));
}

}  // namespace

Integer parse_integer(std::string_view text) {
  bool negative = false;
  auto rest = strip_sign(text, negative);
  Integer n = parse_digits(rest, text);
  return negative ? Integer(-n) : n;
}

Rational parse_rational(std::string_view text) {
  bool negative = false;
  auto rest = strip_sign(text, negative);
  auto slash = rest.find('/');
  Integer num = parse_digits(rest.substr(0, slash), text);
  Integer den = 1;
  if (slash != std::string_view::npos) {
    den = parse_digits(rest.substr(slash + 1), text);
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  }
  Rational q(num, den);
  return negative ? Rational(-q) : q;
}

std::string to_string(const Integer& n) { return n.str(); }

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Integer floor_mod(const Integer& a, const Integer& n) {
  Integer r = a % n;
  if (r < 0) r += n;
  return r;
}

Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

const Rational& ExtendedRational::value() const {
  if (!value_) throw std::logic_error("value() of infinite ExtendedRational");
  return *value_;
}

std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.is_infinite() || b.is_infinite()) {
    return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
  }
  if (*a.value_ < *b.value_) return std::strong_ordering::less;
  if (*b.value_ < *a.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExtendedRational min(const ExtendedRational& a, const ExtendedRational& b) { return b < a ? b : a; }

std::string to_string(const ExtendedRational& q) {
  return q.is_infinite() ? std::string("inf") : to_string(q.value());
}

}  // namespace floer
