#include "doctest.h"
#include "floer/criterion.hpp"
#include "floer/error.hpp"
#include "test_util.hpp"

using namespace floer;
using testutil::q;

namespace {

const Ring Z8 = Ring::integers_mod(8);
const Ring Z4 = Ring::integers_mod(4);
const Ring Z2 = Ring::integers_mod(2);

Scenario pair_of(const std::string& l, BuiltinParams lp, const std::string& k, BuiltinParams kp = {}) {
  return combine(builtin_scenario(l, lp), builtin_scenario(k, kp));
}

Scenario swapped(Scenario sc) {
  std::swap(sc.sides[0], sc.sides[1]);
  return sc;
}

bool audit_has(const Verdict& v, const std::string& check) {
  for (const auto& e : v.audit)
    if (e["check"] == check) return true;
  return false;
}

}  // namespace

TEST_CASE("area gate arithmetic") {
  auto inf = ExtendedRational::infinity();
  CHECK(area_gate(q("1/10"), q("1/3"), q("9/20"), inf));
  CHECK_FALSE(area_gate(q("1/8"), q("1/3"), q("7/16"), inf));
  CHECK(area_gate(q("7/3"), q("5"), inf, inf));
  CHECK_FALSE(area_gate(q("1/9"), q("1/3"), q("4/9"), inf));  // equality is not enough
  GateData g{q("1/10"), q("1/3"), q("9/20"), inf};
  CHECK(g.margin() == ExtendedRational(q("1/60")));
}

TEST_CASE("CP2: Chekanov-type torus against the Clifford torus") {
  auto sc = pair_of("cp2_ta", {{"a", q("1/10")}}, "cp2_clifford");
  Verdict v = evaluate_pair(sc, {Z8});
  CHECK(v.conclusion == Conclusion::NonDisplaceable);
  CHECK(v.theorem == theorem::low_area_pairing);
  REQUIRE(v.pairing);
  CHECK(v.pairing->to_string() == "4");
  CHECK(v.gate->A == ExtendedRational(q("9/20")));
  CHECK(v.gate->B.is_infinite());
  CHECK(evaluate_pair(swapped(sc), {Z8}).conclusion == Conclusion::NonDisplaceable);

  Verdict self = evaluate_pair(pair_of("cp2_ta", {{"a", q("1/10")}}, "cp2_ta", {{"a", q("1/10")}}), {Z8});
  CHECK(self.conclusion == Conclusion::Inconclusive);
  CHECK(self.reason == "pairing_zero");
  CHECK(self.detail.find("16") != std::string::npos);

  Verdict late = evaluate_pair(pair_of("cp2_ta", {{"a", q("3/10")}}, "cp2_clifford"), {Z8});
  CHECK(late.reason == "area_gate");
  CHECK(late.detail.find("19/30") != std::string::npos);
  CHECK(late.detail.find("7/20") != std::string::npos);
  CHECK_FALSE(audit_has(late, "pairing"));

  Verdict edge = evaluate_pair(pair_of("cp2_ta", {{"a", q("1/9")}}, "cp2_clifford"), {Z8});
  CHECK(edge.reason == "area_gate_boundary");
  CHECK(edge.notes.size() == 1);
}

TEST_CASE("CP2 verdict flips exactly at a = 1/9") {
  auto build = [](const Rational& a) { return pair_of("cp2_ta", {{"a", a}}, "cp2_clifford"); };
  auto res = sweep(build, "a", q("1/100"), q("1/5"), q("1/100"), {Z8});
  REQUIRE(res.points.size() == 20);
  for (const auto& p : res.points) {
    CAPTURE(to_string(p.value));
    CHECK((p.verdict.conclusion == Conclusion::NonDisplaceable) == (p.value < q("1/9")));
  }
  REQUIRE(res.flips.size() == 1);
  CHECK(res.flips[0].before == q("11/100"));
  CHECK(res.flips[0].after == q("3/25"));
  REQUIRE(res.flips[0].threshold);
  CHECK(*res.flips[0].threshold == q("1/9"));
  // a finer grid around the threshold
  auto fine = sweep(build, "a", q("1/10"), q("1/8"), q("1/360"), {Z8});
  for (const auto& p : fine.points) {
    CHECK((p.verdict.conclusion == Conclusion::NonDisplaceable) == (p.value < q("1/9")));
  }
  CHECK_THROWS_AS(sweep(build, "a", q("1/5"), q("1/10"), q("1/100"), {Z8}), Error);
  CHECK_THROWS_AS(sweep(build, "a", q("1/10"), q("1/5"), q("0"), {Z8}), Error);
}

TEST_CASE("CP1xCP1: plain pairing vanishes, coset pairing does not") {
  auto sc = pair_of("p1xp1_ta", {{"a", q("1/5")}}, "p1xp1_clifford");
  Verdict plain = evaluate_pair(sc, {Z4});
  CHECK(plain.reason == "pairing_zero");
  CHECK(plain.detail == "pairing 4 = 0 in Z/4");

  Verdict cos = evaluate_pair(sc, {Z2, true});
  CHECK(cos.conclusion == Conclusion::NonDisplaceable);
  CHECK(cos.theorem == theorem::low_area_pairing_cosets);
  CHECK(cos.pairing->to_string() == "1");
  CHECK(to_string(min(cos.gate->A, cos.gate->B)) == "4/5");
  CHECK(evaluate_pair(swapped(sc), {Z2, true}).conclusion == Conclusion::NonDisplaceable);

  auto res = sweep([](const Rational& a) { return pair_of("p1xp1_ta", {{"a", a}}, "p1xp1_clifford"); }, "a",
                   q("1/20"), q("2/5"), q("1/20"), {Z2, true});
  for (const auto& p : res.points) CHECK((p.verdict.conclusion == Conclusion::NonDisplaceable) == (p.value < q("1/4")));
  REQUIRE(res.flips.size() == 1);
  CHECK(res.flips[0].threshold == q("1/4"));
}

TEST_CASE("blow-up: monotone partner criterion") {
  auto sc = pair_of("bl3_ta", {{"a", q("1/5")}}, "bl3_clifford");
  Verdict v = evaluate_pair(sc, {Z2, true, true});
  CHECK(v.conclusion == Conclusion::NonDisplaceable);
  CHECK(v.theorem == theorem::monotone_partner_cosets);
  CHECK(v.pairing->to_string() == "1");
  CHECK(v.gate->A == ExtendedRational(q("4/5")));
  CHECK(to_string(v.gate->a) == "1/5");
  CHECK(to_string(v.gate->b) == "1/2");

  // the ordinary criterion cannot be used: the area-1/2 level sits below a+b
  Verdict plain = evaluate_pair(sc, {Z2, true});
  CHECK(plain.conclusion == Conclusion::Inconclusive);

  auto res = sweep([](const Rational& a) { return pair_of("bl3_ta", {{"a", a}}, "bl3_clifford"); }, "a", q("1/20"),
                   q("9/20"), q("1/20"), {Z2, true, true});
  for (const auto& p : res.points) CHECK((p.verdict.conclusion == Conclusion::NonDisplaceable) == (p.value < q("1/4")));
  REQUIRE(!res.flips.empty());
  CHECK(res.flips[0].threshold == q("1/4"));

  CHECK_THROWS_AS(evaluate_pair(pair_of("p1xp1_ta", {{"a", q("1/5")}}, "p1xp1_ta", {{"a", q("1/5")}}), {Z2, true, true}),
                  Error);
}

TEST_CASE("sphere pairs: gate a + b < 2/(k+1)") {
  for (long k = 1; k <= 3; ++k) {
    CAPTURE(k);
    const Rational bound(1, k + 1);
    for (const auto& [a, b] : std::vector<std::pair<Rational, Rational>>{{bound / 2, bound / 3}, {bound - Rational(1, 100), bound / 5}}) {
      Scenario sc = builtin_scenario("sphere_pair", {{"a", a}, {"b", b}, {"k", Rational(k)}});
      Verdict v = evaluate_pair(sc, {Z2, true});
      CHECK(v.conclusion == Conclusion::NonDisplaceable);
      CHECK(v.pairing->to_string() == "1");
      CHECK(a + b < 2 * bound);
      CHECK(area_gate(v.gate->a, v.gate->b, v.gate->A, v.gate->B));
    }
    CHECK_THROWS_AS(builtin_scenario("sphere_pair", {{"a", bound}, {"b", bound / 2}, {"k", Rational(k)}}), Error);
  }
}

TEST_CASE("local systems over Q do not give a usable invariant") {
  auto sc = pair_of("cp2_ta", {{"a", q("1/10")}}, "cp2_clifford");
  Verdict unweighted = evaluate_pair(sc, {Ring::rationals()});
  CHECK(unweighted.reason == "invariant_undefined");
  sc.sides[0].local_system = std::vector<Rational>{1, -1};
  sc.sides[1].local_system = std::vector<Rational>{1, 1};
  Verdict w = evaluate_pair(sc, {Ring::rationals(), false, false, true});
  CHECK(w.conclusion == Conclusion::Inconclusive);
  CHECK(w.reason == "pairing_zero");
  bool saw_zero = false;
  for (const auto& e : w.audit)
    if (e["check"] == "oc_low" && e["side"] == "T_a") saw_zero = e["value"] == "0";
  CHECK(saw_zero);
}

TEST_CASE("errors and degenerate inputs") {
  CHECK_THROWS_AS(evaluate_pair(builtin_scenario("cp2_clifford")), Error);
  try {
    evaluate_pair(builtin_scenario("cp2_clifford"));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TwoSidedRequired);
  }
  auto tr = builtin_scenario("trp2_la", {{"a", q("1/4")}});
  auto both = combine(tr, tr);
  CHECK(evaluate_pair(both).reason == "no_intersection_form");
}

// H2(X) = <H, F> with j(F) = 0, so [L] and [K] can be multiples of F.
TEST_CASE("nonzero [L].[K] short-circuits the decision tree") {
  for (int trial = 0; trial < 100; ++trial) {
    auto h2x = std::make_shared<const FgAbelianGroup>(std::vector<std::string>{"H", "F"}, IntMatrix(0, 2));
    long hh = testutil::uniform(-3, 3), hf = testutil::uniform(-3, 3), ff = testutil::uniform(1, 3);
    if (testutil::uniform(0, 1)) ff = -ff;
    IntersectionForm form(h2x, testutil::mat({{hh, hf}, {hf, ff}}));
    Scenario sc{h2x, form, {}, Ring::integers_mod(testutil::uniform(2, 9))};
    for (int s = 0; s < 2; ++s) {
      auto h2xl = std::make_shared<const FgAbelianGroup>(std::vector<std::string>{"H", "beta"}, IntMatrix(0, 2));
      auto h1 = std::make_shared<const FgAbelianGroup>(std::vector<std::string>{"dbeta"}, IntMatrix(0, 1));
      GroupHom j(h2x, h2xl, testutil::mat({{1, 0}, {0, 0}}));
      GroupHom bd(h2xl, h1, testutil::mat({{0, 1}}));
      long c = testutil::uniform(1, 4) * (testutil::uniform(0, 1) ? 1 : -1);
      LagrangianSide side{s ? "K" : "L", h1, h2xl, j, bd, element(h2x, testutil::ints({0, c})), false,
                          std::nullopt, std::nullopt, std::nullopt, std::nullopt, std::nullopt, DiskLedger{{}, 1}};
      // a single disk whose boundary never cancels
      GroupElement r = element(h2xl, testutil::ints({1, 1}));
      side.ledger.disks.push_back(DiskClass{"D", r, bd.apply(r), 2, q("1/4"), 1});
      sc.sides.push_back(side);
    }
    validate(sc);
    Verdict v = evaluate_pair(sc);
    CHECK(v.conclusion == Conclusion::TopologicallyNonDisplaceable);
    CHECK_FALSE(audit_has(v, "area_gate"));
    CHECK(evaluate_pair(swapped(sc)).conclusion == Conclusion::TopologicallyNonDisplaceable);
  }
}

TEST_CASE("verdicts are symmetric in the two sides") {
  struct Case {
    Scenario sc;
    PairOptions opt;
  };
  std::vector<Case> cases = {
      {pair_of("cp2_ta", {{"a", q("1/10")}}, "cp2_clifford"), {Z8}},
      {pair_of("cp2_ta", {{"a", q("3/10")}}, "cp2_clifford"), {Z8}},
      {pair_of("cp2_ta", {{"a", q("1/10")}}, "cp2_ta", {{"a", q("1/20")}}), {Z8}},
      {pair_of("p1xp1_ta", {{"a", q("1/5")}}, "p1xp1_clifford"), {Z4}},
      {pair_of("p1xp1_ta", {{"a", q("1/5")}}, "p1xp1_clifford"), {Z2, true}},
      {pair_of("bl3_ta", {{"a", q("1/5")}}, "bl3_clifford"), {Z2, true, true}},
      {pair_of("bl3_ta", {{"a", q("3/10")}}, "bl3_clifford"), {Z2, true, true}},
  };
  for (const auto& c : cases) {
    Verdict v1 = evaluate_pair(c.sc, c.opt);
    Verdict v2 = evaluate_pair(swapped(c.sc), c.opt);
    CHECK(v1.conclusion == v2.conclusion);
    CHECK(v1.reason == v2.reason);
  }
}

TEST_CASE("verdict JSON") {
  Json j = to_json(evaluate_pair(pair_of("cp2_ta", {{"a", q("1/10")}}, "cp2_clifford"), {Z8}));
  CHECK(j["conclusion"] == "non_displaceable");
  CHECK(j["theorem"] == "low_area_pairing");
  CHECK(j["pairing"] == "4");
  CHECK(j["audit"].size() == 6);
}
