#pragma once

// Non-displaceability decision procedures for a pair of Lagrangians, with an
// audit trail of every check, and exact parameter sweeps.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "floer/invariants.hpp"
#include "floer/scenario.hpp"

namespace floer {

enum class Conclusion { TopologicallyNonDisplaceable, NonDisplaceable, Inconclusive };
std::string to_string(Conclusion c);  // snake_case wire names

// Identifiers of the criteria a NonDisplaceable verdict can cite.
namespace theorem {
inline constexpr const char* low_area_pairing = "low_area_pairing";
inline constexpr const char* low_area_pairing_cosets = "low_area_pairing_cosets";
inline constexpr const char* monotone_partner = "monotone_partner";
inline constexpr const char* monotone_partner_cosets = "monotone_partner_cosets";
inline constexpr const char* lower_index = "lower_index";
}  // namespace theorem

struct PairOptions {
  std::optional<Ring> ring;  // coefficient ring Q; defaults to the scenario's
  bool use_subspaces = false;
  bool monotone_variant = false;
  bool weighted = false;  // weight disks by the sides' local systems
};

struct GateData {
  ExtendedRational a, b, A, B;
  /// min(A,B) - (a+b), or +inf.
  ExtendedRational margin() const;
};

/// a + b < min(A, B), +inf absorbing.
bool area_gate(const ExtendedRational& a, const ExtendedRational& b, const ExtendedRational& A,
               const ExtendedRational& B);

struct Verdict {
  Conclusion conclusion = Conclusion::Inconclusive;
  std::string theorem;  // set for NonDisplaceable
  std::string reason;   // short code, set for Inconclusive
  std::string detail;
  Json audit = Json::array();
  std::vector<std::string> notes;
  std::optional<RingElement> pairing;
  std::optional<GateData> gate;
};

/// Throws TwoSidedRequired; HypothesisViolated when monotone_variant is asked
/// for without exactly one monotone side. Failures of the hypotheses of the
/// criteria become Inconclusive verdicts.
Verdict evaluate_pair(const Scenario& scenario, const PairOptions& options = {});

Json to_json(const Verdict& v);

struct SweepPoint {
  Rational value;
  Verdict verdict;
};

struct SweepFlip {
  Rational before;  // last grid value with the old conclusion
  Rational after;   // first grid value with the new one
  Conclusion from, to;
  /// Exact parameter where the gate margin vanishes, when the margin is affine
  /// between the two grid points.
  std::optional<Rational> threshold;
};

struct SweepResult {
  std::string param;
  std::vector<SweepPoint> points;
  std::vector<SweepFlip> flips;
};

/// Evaluates build(x) for x = from, from+step, ..., <= to. Throws BadParams
/// for a non-positive step or an empty range.
SweepResult sweep(const std::function<Scenario(const Rational&)>& build, const std::string& param,
                  const Rational& from, const Rational& to, const Rational& step, const PairOptions& options = {});

Json to_json(const SweepResult& s);

}  // namespace floer
