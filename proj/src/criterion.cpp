#include "floer/criterion.hpp"

#include "floer/error.hpp"

namespace floer {

namespace {

ExtendedRational add(const ExtendedRational& x, const ExtendedRational& y) {
  if (x.is_infinite() || y.is_infinite()) return ExtendedRational::infinity();
  return Rational(x.value() + y.value());
}

Json oc_json(const LagrangianSide& side, const StringInvariantClass& oc) {
  Json j{{"check", "oc_low"}, {"side", side.name}, {"value", oc.value.to_string()}, {"ring", oc.value.ring().name()},
         {"ambiguity", oc.ambiguity.to_string()}};
  if (oc.asserted) j["asserted"] = true;
  j["disks"] = oc.disks;
  return j;
}

// Integer pairing of the canonical coordinates, for messages like "16 = 0 in Z/8".
Integer integer_pairing(const IntersectionForm& form, const GroupElement& x, const GroupElement& y) {
  std::vector<Integer> xi, yi;
  for (const auto& c : x.coords()) xi.push_back(c.integer_value());
  for (const auto& c : y.coords()) yi.push_back(c.integer_value());
  const Ring Z = Ring::integers();
  return pair(form, element(form.group(), xi, Z), element(form.group(), yi, Z)).integer_value();
}

Verdict inconclusive(Verdict v, std::string reason, std::string detail) {
  v.conclusion = Conclusion::Inconclusive;
  v.reason = std::move(reason);
  v.detail = std::move(detail);
  return v;
}

}  // namespace

std::string to_string(Conclusion c) {
  switch (c) {
    case Conclusion::TopologicallyNonDisplaceable: return "topologically_non_displaceable";
    case Conclusion::NonDisplaceable: return "non_displaceable";
    case Conclusion::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

ExtendedRational GateData::margin() const {
  ExtendedRational m = min(A, B);
  if (m.is_infinite()) return m;
  return Rational(m.value() - add(a, b).value());
}

bool area_gate(const ExtendedRational& a, const ExtendedRational& b, const ExtendedRational& A,
               const ExtendedRational& B) {
  return add(a, b) < min(A, B);
}

Verdict evaluate_pair(const Scenario& sc, const PairOptions& opt) {
  if (sc.sides.size() != 2) throw Error(ErrorCode::TwoSidedRequired, "the criteria compare two Lagrangians; use --vs");
  const Ring Q = opt.ring.value_or(sc.ring);
  const LagrangianSide& L = sc.sides[0];
  const LagrangianSide& K = sc.sides[1];
  if (opt.monotone_variant && L.monotone == K.monotone) {
    throw Error(ErrorCode::HypothesisViolated, "the monotone-partner criterion needs exactly one monotone side");
  }

  Verdict v;
  v.audit.push_back(Json{{"check", "coefficients"}, {"ring", Q.name()}, {"subspaces", opt.use_subspaces},
                         {"monotone_variant", opt.monotone_variant}, {"weighted", opt.weighted}});
  if (!sc.form) return inconclusive(v, "no_intersection_form", "H2(X) carries no intersection form");
  const IntersectionForm& form = *sc.form;

  // (1) [L].[K] over Z
  RingElement top = pair(form, L.fundamental_class, K.fundamental_class);
  v.audit.push_back(Json{{"check", "fundamental_classes"}, {"L", L.fundamental_class.to_string()},
                         {"K", K.fundamental_class.to_string()}, {"pairing", top.to_string()}});
  if (!top.is_zero()) {
    v.conclusion = Conclusion::TopologicallyNonDisplaceable;
    v.detail = "[L].[K] = " + top.to_string() + " over Z";
    return v;
  }

  // (2) lower-index pairings, only informative when a fundamental class is nonzero
  const GroupElement LQ = L.fundamental_class.over(Q);
  const GroupElement KQ = K.fundamental_class.over(Q);
  auto try_oc = [&](const LagrangianSide& s) -> std::optional<StringInvariantClass> {
    try {
      return oc_low(s, Q, opt.use_subspaces, opt.weighted);
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  if (!LQ.is_zero() || !KQ.is_zero()) {
    auto ocL = try_oc(L);
    auto ocK = try_oc(K);
    Json entry{{"check", "lower_index"}};
    bool fired = false;
    if (ocK) {
      RingElement p = pair(form, LQ, ocK->value);
      entry["L.oc(K)"] = p.to_string();
      fired = fired || !p.is_zero();
    }
    if (ocL) {
      RingElement p = pair(form, KQ, ocL->value);
      entry["K.oc(L)"] = p.to_string();
      fired = fired || !p.is_zero();
    }
    v.audit.push_back(entry);
    if (fired) {
      v.conclusion = Conclusion::NonDisplaceable;
      v.theorem = theorem::lower_index;
      v.detail = "a lower-index pairing is nonzero over " + Q.name();
      return v;
    }
  }

  // (3) area data and the gate
  GateData g;
  try {
    if (opt.monotone_variant) {
      auto A_of = [&](const LagrangianSide& s) -> ExtendedRational {
        return s.monotone ? ExtendedRational::infinity() : cancellation_threshold(s, Q, opt.use_subspaces);
      };
      g = GateData{least_area(L), least_area(K), A_of(L), A_of(K)};
    } else {
      g = GateData{least_area(L), least_area(K), next_area(L), next_area(K)};
    }
  } catch (const Error& e) {
    return inconclusive(v, "area_data_unavailable", e.detail());
  }
  v.gate = g;
  const ExtendedRational lhs = add(g.a, g.b);
  const ExtendedRational rhs = min(g.A, g.B);
  const bool passed = lhs < rhs;
  v.audit.push_back(Json{{"check", "area_gate"}, {"a", to_string(g.a)}, {"b", to_string(g.b)}, {"A", to_string(g.A)},
                         {"B", to_string(g.B)}, {"a+b", to_string(lhs)}, {"min(A,B)", to_string(rhs)},
                         {"passed", passed}});
  if (lhs == rhs) {
    v.notes.push_back("a+b equals min(A,B); the strict inequality fails and the boundary case is not certified here");
    return inconclusive(v, "area_gate_boundary", "a+b = min(A,B) = " + to_string(rhs));
  }
  if (!passed) {
    return inconclusive(v, "area_gate", "a+b = " + to_string(lhs) + " >= min(A,B) = " + to_string(rhs));
  }

  // (4) the two invariants
  std::optional<StringInvariantClass> ocs[2];
  for (int i = 0; i < 2; ++i) {
    const LagrangianSide& s = sc.sides[i];
    try {
      ocs[i] = oc_low(s, Q, opt.use_subspaces, opt.weighted);
    } catch (const Error& e) {
      v.audit.push_back(Json{{"check", "oc_low"}, {"side", s.name}, {"error", std::string(to_string(e.code()))},
                             {"detail", e.detail()}});
      return inconclusive(v, "invariant_undefined", e.detail());
    }
    v.audit.push_back(oc_json(s, *ocs[i]));
    for (const auto& w : ocs[i]->warnings) v.notes.push_back(w);
  }

  // (5) pairing
  RingElement p = pair(form, ocs[0]->value, ocs[1]->value);
  v.pairing = p;
  Integer lift = integer_pairing(form, ocs[0]->value, ocs[1]->value);
  v.audit.push_back(Json{{"check", "pairing"}, {"value", p.to_string()}, {"integer_lift", to_string(lift)}});

  if (!LQ.is_zero() || !KQ.is_zero()) {
    bool shifts = !pair(form, LQ, ocs[1]->value).is_zero() || !pair(form, ocs[0]->value, KQ).is_zero() ||
                  !pair(form, LQ, KQ).is_zero();
    if (shifts) return inconclusive(v, "ambiguous_pairing", "the pairing depends on the choice of lifts modulo [L], [K]");
  }
  if (p.is_zero()) {
    return inconclusive(v, "pairing_zero", "pairing " + to_string(lift) + " = 0 in " + Q.name());
  }
  if (opt.weighted) {
    return inconclusive(v, "weighted_not_covered", "nonzero pairing of local-system weighted invariants is not covered by the criteria");
  }
  v.conclusion = Conclusion::NonDisplaceable;
  if (opt.monotone_variant) {
    v.theorem = opt.use_subspaces ? theorem::monotone_partner_cosets : theorem::monotone_partner;
  } else {
    v.theorem = opt.use_subspaces ? theorem::low_area_pairing_cosets : theorem::low_area_pairing;
  }
  v.detail = "pairing " + p.to_string() + " != 0 in " + Q.name() + " and the area gate holds";
  return v;
}

Json to_json(const Verdict& v) {
  Json j;
  j["conclusion"] = to_string(v.conclusion);
  if (!v.theorem.empty()) j["theorem"] = v.theorem;
  if (!v.reason.empty()) j["reason"] = v.reason;
  j["detail"] = v.detail;
  if (v.pairing) j["pairing"] = v.pairing->to_string();
  j["audit"] = v.audit;
  j["notes"] = v.notes;
  return j;
}

SweepResult sweep(const std::function<Scenario(const Rational&)>& build, const std::string& param,
                  const Rational& from, const Rational& to, const Rational& step, const PairOptions& options) {
  if (step <= 0) throw Error(ErrorCode::BadParams, "sweep step must be positive");
  if (from > to) throw Error(ErrorCode::BadParams, "sweep range is empty");
  SweepResult out{param, {}, {}};
  for (Rational x = from; x <= to; x += step) out.points.push_back({x, evaluate_pair(build(x), options)});

  auto margin_at = [&](const Rational& x) -> std::optional<Rational> {
    try {
      Verdict v = evaluate_pair(build(x), options);
      if (!v.gate || v.gate->margin().is_infinite()) return std::nullopt;
      return v.gate->margin().value();
    } catch (const Error&) {
      return std::nullopt;
    }
  };

  for (std::size_t i = 1; i < out.points.size(); ++i) {
    const auto& p0 = out.points[i - 1];
    const auto& p1 = out.points[i];
    if (p0.verdict.conclusion == p1.verdict.conclusion) continue;
    SweepFlip flip{p0.value, p1.value, p0.verdict.conclusion, p1.verdict.conclusion, std::nullopt};
    if (p0.verdict.gate && p1.verdict.gate) {
      auto m0 = p0.verdict.gate->margin();
      auto m1 = p1.verdict.gate->margin();
      if (!m0.is_infinite() && !m1.is_infinite() && m0.value() != m1.value() &&
          (m0.value() > 0) != (m1.value() > 0)) {
        const Rational &y0 = m0.value(), &y1 = m1.value();
        Rational root = p0.value + (p1.value - p0.value) * y0 / (y0 - y1);
        auto mid = margin_at((p0.value + p1.value) / 2);
        auto at_root = margin_at(root);
        // accept only when the margin is affine on the interval
        if (mid && *mid == (y0 + y1) / 2 && at_root && *at_root == 0) flip.threshold = root;
      }
    }
    out.flips.push_back(flip);
  }
  return out;
}

Json to_json(const SweepResult& s) {
  Json j;
  j["param"] = s.param;
  Json pts = Json::array();
  for (const auto& p : s.points) {
    Json e{{"value", to_string(p.value)}, {"conclusion", to_string(p.verdict.conclusion)}};
    if (!p.verdict.theorem.empty()) e["theorem"] = p.verdict.theorem;
    if (!p.verdict.reason.empty()) e["reason"] = p.verdict.reason;
    if (p.verdict.pairing) e["pairing"] = p.verdict.pairing->to_string();
    if (p.verdict.gate) e["margin"] = to_string(p.verdict.gate->margin());
    pts.push_back(e);
  }
  j["points"] = pts;
  Json flips = Json::array();
  for (const auto& f : s.flips) {
    Json e{{"before", to_string(f.before)}, {"after", to_string(f.after)}, {"from", to_string(f.from)},
           {"to", to_string(f.to)}};
    e["threshold"] = f.threshold ? Json(to_string(*f.threshold)) : Json(nullptr);
    flips.push_back(e);
  }
  j["flips"] = flips;
  return j;
}

}  // namespace floer
