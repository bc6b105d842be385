#include "floer/invariants.hpp"

#include <algorithm>
#include <set>

#include "floer/error.hpp"

namespace floer {

namespace {

// Is v (over the subspace's field) in span(S) + relations of H1(L)?
bool in_linear_part(const LagrangianSide& side, const AffineSubspace& S, const std::vector<RingElement>& v) {
  const Ring& k = S.field;
  const std::size_t n = side.H1_L->generator_count();
  const IntMatrix& rel = side.H1_L->relations();
  const std::size_t cols = S.span.size() + rel.rows();
  if (cols == 0) return std::all_of(v.begin(), v.end(), [](const RingElement& x) { return x.is_zero(); });
  IntMatrix m(n, cols);
  for (std::size_t c = 0; c < S.span.size(); ++c)
    for (std::size_t r = 0; r < n; ++r) m(r, c) = S.span[c][r];
  for (std::size_t c = 0; c < rel.rows(); ++c)
    for (std::size_t r = 0; r < n; ++r) m(r, S.span.size() + c) = rel(c, r);
  return solve_linear(m, std::span<const RingElement>(v), k).has_value();
}

std::vector<RingElement> mod_p(const GroupElement& boundary, const Ring& k) { return boundary.over(k).coords(); }

RingElement weight(const LagrangianSide& side, const DiskClass& d, const Ring& ring, bool weighted) {
  if (!weighted) return reduce(1L, ring);
  if (!side.local_system) throw Error(ErrorCode::MissingLocalSystem, "side '" + side.name + "' has no local system");
  Rational w = 1;
  const auto& rho = *side.local_system;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    Integer e = d.boundary.coords()[i].integer_value();
    Rational base = e < 0 ? Rational(1) / rho[i] : rho[i];
    for (Integer m = abs(e); m > 0; --m) w *= base;
  }
  return reduce(w, ring);
}

bool boundary_nonzero(const DiskClass& d) { return !d.boundary.is_zero(); }

std::vector<const DiskClass*> disks_at(const LagrangianSide& side, const Rational& level) {
  std::vector<const DiskClass*> out;
  for (const auto& d : side.ledger.disks)
    if (d.maslov == 2 && d.area == level && boundary_nonzero(d)) out.push_back(&d);
  return out;
}

const AffineSubspace& subspace_of(const LagrangianSide& side) {
  if (!side.subspace) throw Error(ErrorCode::BadParams, "side '" + side.name + "' has no affine subspace");
  return *side.subspace;
}

GroupElement contribution(const LagrangianSide& side, const DiskClass& d, const Ring& ring, bool weighted) {
  return (reduce(d.count, ring) * weight(side, d, ring, weighted)) * d.boundary.over(ring);
}

}  // namespace

std::vector<Rational> area_levels(const LagrangianSide& side) {
  std::set<Rational> levels;
  for (const auto& d : side.ledger.disks)
    if (d.maslov == 2) levels.insert(d.area);
  return {levels.begin(), levels.end()};
}

Rational least_area(const LagrangianSide& side) {
  auto levels = area_levels(side);
  if (!levels.empty()) return levels.front();
  if (side.monotone && side.b) return *side.b;
  throw Error(ErrorCode::InsufficientLedger, "side '" + side.name + "' has an empty ledger");
}

ExtendedRational next_area(const LagrangianSide& side) {
  auto levels = area_levels(side);
  if (levels.size() >= 2) return levels[1];
  if (side.monotone) return ExtendedRational::infinity();
  if (side.lattice_params) {
    return area_progression(side.lattice_params->k, side.lattice_params->N, least_area(side)).A_bound;
  }
  throw Error(ErrorCode::InsufficientLedger, "side '" + side.name + "': no area level between the least area and the ledger cutoff " +
                                                 to_string(side.ledger.complete_below) +
                                                 ", and neither monotonicity nor lattice data to bound it");
}

bool AreaProgression::contains(const Rational& x) const {
  Rational q = (x - base) / step;
  return denominator(q) == 1;
}

AreaProgression area_progression(long k, long N, const Rational& a) {
  if (k < 1 || N < 1) throw Error(ErrorCode::BadParams, "area progression needs k >= 1 and N >= 1");
  if (a * (k + N) >= 1) {
    throw Error(ErrorCode::HypothesisViolated, "a = " + to_string(a) + " is not below 1/(k+N) = 1/" + std::to_string(k + N));
  }
  Rational step = (1 - k * a) / N;
  return {a, step, a + step};
}

GroupElement boundary_sum(const LagrangianSide& side, const Ring& ring, const Rational& level,
                          const AffineSubspace* coset, bool weighted) {
  GroupElement sum = GroupElement::zero(side.H1_L, ring);
  for (const DiskClass* d : disks_at(side, level)) {
    if (coset && !in_subspace(side, *coset, d->boundary)) continue;
    sum = sum + contribution(side, *d, ring, weighted);
  }
  return sum;
}

bool in_subspace(const LagrangianSide& side, const AffineSubspace& S, const GroupElement& boundary) {
  auto v = mod_p(boundary, S.field);
  auto base = reduce_vector(std::span<const Integer>(S.base), S.field);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = v[i] - base[i];
  return in_linear_part(side, S, v);
}

GroupedCancellation grouped_cancellation(const LagrangianSide& side, const AffineSubspace& S, const Ring& Q,
                                         const Rational& level, bool weighted) {
  GroupedCancellation out;
  std::vector<std::vector<RingElement>> reps;
  for (const DiskClass* d : disks_at(side, level)) {
    auto v = mod_p(d->boundary, S.field);
    std::size_t idx = reps.size();
    for (std::size_t i = 0; i < reps.size(); ++i) {
      std::vector<RingElement> diff;
      for (std::size_t c = 0; c < v.size(); ++c) diff.push_back(v[c] - reps[i][c]);
      if (in_linear_part(side, S, diff)) {
        idx = i;
        break;
      }
    }
    if (idx == reps.size()) {
      reps.push_back(v);
      std::vector<Integer> rep;
      for (const auto& x : v) rep.push_back(x.integer_value());
      out.cosets.push_back(CosetSum{rep, GroupElement::zero(side.H1_L, Q), {}});
    }
    out.cosets[idx].sum = out.cosets[idx].sum + contribution(side, *d, Q, weighted);
    out.cosets[idx].disks.push_back(d->label);
  }
  for (const auto& c : out.cosets)
    if (!c.sum.is_zero()) out.holds = false;
  return out;
}

StringInvariantClass oc_low(const LagrangianSide& side, const Ring& Q, bool use_subspace, bool weighted) {
  const GroupPtr& h2x = side.j.source();
  if (side.ledger.disks.empty()) {
    if (side.asserted_invariant && use_subspace == side.subspace.has_value()) {
      StringInvariantClass out{side.asserted_invariant->over(Q), side.fundamental_class.over(Q), true, {}, {}};
      out.warnings.push_back("side '" + side.name + "': no disk ledger, using the asserted invariant");
      return out;
    }
    throw Error(ErrorCode::InsufficientLedger, "side '" + side.name + "' has no disk ledger" +
                                                   (side.asserted_invariant ? " and its asserted invariant is for a different subspace setting" : ""));
  }
  const Rational level = least_area(side);

  std::vector<const DiskClass*> selected = disks_at(side, level);
  if (use_subspace) {
    const AffineSubspace& S = subspace_of(side);
    auto grouped = grouped_cancellation(side, S, Q, level, weighted);
    for (const auto& c : grouped.cosets) {
      if (!c.sum.is_zero()) {
        throw Error(ErrorCode::CancellationFails, "side '" + side.name + "': boundaries in one coset sum to " +
                                                      c.sum.to_string() + " over " + Q.name());
      }
    }
    std::erase_if(selected, [&](const DiskClass* d) { return !in_subspace(side, S, d->boundary); });
  } else {
    GroupElement sum = boundary_sum(side, Q, level, nullptr, weighted);
    if (!sum.is_zero()) {
      throw Error(ErrorCode::CancellationFails,
                  "side '" + side.name + "': least-area boundaries sum to " + sum.to_string() + " over " + Q.name());
    }
  }

  StringInvariantClass out{GroupElement::zero(h2x, Q), side.fundamental_class.over(Q), false, {}, {}};
  GroupElement target = GroupElement::zero(side.H2_XL, Q);
  for (const DiskClass* d : selected) {
    target = target + (reduce(d->count, Q) * weight(side, *d, Q, weighted)) * d->rel_class.over(Q);
    out.disks.push_back(d->label);
  }
  if (selected.empty()) {
    out.warnings.push_back("side '" + side.name + "': no least-area disk with nonzero boundary; invariant is 0");
    return out;
  }
  auto lifted = side.j.lift(target);
  if (!lifted) {
    throw Error(ErrorCode::NoLift, "side '" + side.name + "': disk sum " + target.to_string() + " is not in the image of j");
  }
  out.value = *lifted;
  if (use_subspace && weighted) out.warnings.push_back("local-system weights applied inside coset sums");
  return out;
}

ExtendedRational cancellation_threshold(const LagrangianSide& side, const Ring& Q, bool use_subspace) {
  for (const auto& level : area_levels(side)) {
    if (use_subspace) {
      if (!grouped_cancellation(side, subspace_of(side), Q, level).holds) return level;
    } else if (!boundary_sum(side, Q, level).is_zero()) {
      return level;
    }
  }
  return ExtendedRational::infinity();
}

}  // namespace floer
