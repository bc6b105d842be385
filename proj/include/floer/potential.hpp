#pragma once

// Laurent polynomials in z, w with Novikov coefficients c * t^lambda * e^{k c},
// built from disk ledgers; formal derivatives, Newton-polygon valuations and
// critical-point searches.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "floer/rational.hpp"
#include "floer/rings.hpp"
#include "floer/scenario.hpp"

namespace floer {

struct NovikovTerm {
  Rational coeff;  // nonzero
  Rational t;      // exponent of t
  long ec = 0;     // exponent of the formal unit e^c
  long z = 0;
  long w = 0;
  friend bool operator==(const NovikovTerm&, const NovikovTerm&) = default;
};

class NovikovPolynomial {
 public:
  NovikovPolynomial() = default;
  /// Merges like monomials and drops zero coefficients.
  explicit NovikovPolynomial(std::vector<NovikovTerm> terms);
  static NovikovPolynomial monomial(const Rational& coeff, const Rational& t, long ec, long z, long w);

  /// Sorted by (t, z, w, ec).
  const std::vector<NovikovTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Distinct t exponents, ascending.
  std::vector<Rational> levels() const;

  friend NovikovPolynomial operator+(const NovikovPolynomial& a, const NovikovPolynomial& b);
  friend NovikovPolynomial operator-(const NovikovPolynomial& a, const NovikovPolynomial& b);
  friend NovikovPolynomial operator*(const NovikovPolynomial& a, const NovikovPolynomial& b);
  friend NovikovPolynomial operator*(const Rational& s, const NovikovPolynomial& p);
  friend bool operator==(const NovikovPolynomial&, const NovikovPolynomial&) = default;

  /// "t^{1/10}*z^{-2}*w^{-1} + 2*t^{1/10}*z^{-2} - 8*e^{c}*z"; "0" when empty.
  std::string to_string() const;

 private:
  std::vector<NovikovTerm> terms_;
};

/// Inverse of NovikovPolynomial::to_string. Throws ParseError.
NovikovPolynomial parse_polynomial(std::string_view text);

Json to_json(const NovikovPolynomial& p);
NovikovPolynomial polynomial_from_json(const Json& j);  // throws SchemaError

/// sum count * t^area * z^(bd . dbeta) * w^(bd . dalpha) over Maslov-2 disks.
/// Throws BasisMismatch unless H1(L) has exactly two generators.
NovikovPolynomial potential_from_ledger(const LagrangianSide& side);

NovikovPolynomial truncate_to_level(const NovikovPolynomial& p, const Rational& level);

/// Replaces the monomial of each hit disk by itself times e^{c*hits}.
/// Throws UnknownLabel.
NovikovPolynomial bulk_deform(const NovikovPolynomial& p, const LagrangianSide& side,
                              const std::map<std::string, long>& hits);

enum class Variable { z, w };
NovikovPolynomial partial_derivative(const NovikovPolynomial& p, Variable var);

struct ValuationTerm {
  Rational t;
  long z = 0;
};

/// Slopes v at which min(t + z*v) is attained at least twice. Throws
/// Degenerate when fewer than two distinct z exponents occur.
std::vector<Rational> newton_valuations(const std::vector<ValuationTerm>& terms);

struct CriticalBranch {
  Rational w0;
  std::vector<ValuationTerm> dz_terms;  // d/dz at w = w0, after cancellation
  bool dz_vanishes = false;             // every coefficient cancels at w0
  bool degenerate = false;              // a single z exponent survives
  std::vector<Rational> valuations;
  bool unit_candidate = false;
};

struct UnitCriticalAnalysis {
  bool has_unit_candidate = false;
  std::vector<Rational> w_polynomial;  // coefficients of the w-factor of d/dw, constant first
  std::vector<CriticalBranch> branches;
  long unanalyzed_degree = 0;  // degree left after removing rational roots
  std::vector<std::string> warnings;
};

/// Requires d/dw p = (monomial) * f(w); throws UnsupportedShape otherwise.
UnitCriticalAnalysis unit_critical_analysis(const NovikovPolynomial& p);

/// Unit pairs (z, w) of a finite ring where both partials vanish, with t and
/// e^c set to 1. Throws NotSingleLevel, InfiniteRing.
std::vector<std::pair<RingElement, RingElement>> residue_critical_points(const NovikovPolynomial& p, const Ring& ring);

/// Value of p at (z, w) in the ring with t = e^c = 1.
RingElement evaluate(const NovikovPolynomial& p, const RingElement& z, const RingElement& w);

Json to_json(const UnitCriticalAnalysis& a);

}  // namespace floer
