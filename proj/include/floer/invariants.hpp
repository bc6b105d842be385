#pragma once

// Area spectra, the cancellation conditions on least-area disk boundaries, and
// the low-area string invariant (plain, coset-refined and locally weighted).

#include <optional>
#include <string>
#include <vector>

#include "floer/abelian.hpp"
#include "floer/rational.hpp"
#include "floer/scenario.hpp"

namespace floer {

/// Distinct ledger areas, ascending.
std::vector<Rational> area_levels(const LagrangianSide& side);

/// Least area of a Maslov-2 class. For a monotone side with an empty ledger
/// this is b. Throws InsufficientLedger otherwise when the ledger is empty.
Rational least_area(const LagrangianSide& side);

/// The next area level: from the ledger when it has a second level, +inf for
/// monotone sides, else the lower bound from the area progression.
/// Throws InsufficientLedger or HypothesisViolated.
ExtendedRational next_area(const LagrangianSide& side);

/// Areas of Maslov-2 classes lie in base + step*Z when c1 = k*omega on X and
/// the boundary Maslov class is divisible by N.
struct AreaProgression {
  Rational base;
  Rational step;
  Rational A_bound;
  bool contains(const Rational& x) const;
};

/// Throws HypothesisViolated unless a < 1/(k+N); BadParams unless k, N >= 1.
AreaProgression area_progression(long k, long N, const Rational& a);

/// Sum of count * weight * boundary over the disks at `level` whose boundary is
/// nonzero in H1(L; Z), taken in H1(L; ring). With `coset`, only disks whose
/// boundary mod p lies in coset.base + span are summed. `weighted` uses the
/// side's local system (MissingLocalSystem if absent).
GroupElement boundary_sum(const LagrangianSide& side, const Ring& ring, const Rational& level,
                          const AffineSubspace* coset = nullptr, bool weighted = false);

struct CosetSum {
  std::vector<Integer> representative;  // boundary mod p of the first disk in the coset
  GroupElement sum;                     // over the coefficient ring
  std::vector<std::string> disks;
};

struct GroupedCancellation {
  bool holds = true;
  std::vector<CosetSum> cosets;  // in order of first appearance in the ledger
};

/// Groups the disks at `level` (nonzero integral boundary) by the coset of the
/// linear part of S their boundary mod p lies in, and sums each group over Q.
GroupedCancellation grouped_cancellation(const LagrangianSide& side, const AffineSubspace& S, const Ring& Q,
                                         const Rational& level, bool weighted = false);

/// x in base + span(+ relations of H1(L)) over the subspace's field.
bool in_subspace(const LagrangianSide& side, const AffineSubspace& S, const GroupElement& boundary);

struct StringInvariantClass {
  GroupElement value;      // in H2(X), over the coefficient ring
  GroupElement ambiguity;  // [L]; the value is defined modulo its multiples
  bool asserted = false;   // taken from the side's asserted_invariant
  std::vector<std::string> disks;
  std::vector<std::string> warnings;
};

/// Throws CancellationFails, NoLift, InsufficientLedger, MissingLocalSystem,
/// BadParams (subspace requested but not given).
StringInvariantClass oc_low(const LagrangianSide& side, const Ring& Q, bool use_subspace = false,
                            bool weighted = false);

/// Smallest ledger level whose (coset-wise when use_subspace) boundary sum is
/// nonzero over Q; +inf when every level below the cutoff cancels.
ExtendedRational cancellation_threshold(const LagrangianSide& side, const Ring& Q, bool use_subspace = false);

}  // namespace floer
