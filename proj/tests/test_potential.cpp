#include <set>

#include "doctest.h"
#include "floer/error.hpp"
#include "floer/potential.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace floer;
using testutil::q;
using testutil::uniform;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Usage;
}

LagrangianSide side_of(const std::string& name, BuiltinParams params = {}) {
  return builtin_scenario(name, params).sides.at(0);
}

NovikovPolynomial P(const char* s) { return parse_polynomial(s); }

// t^a (1+w)^2 / (z^2 w), built by multiplication rather than typed out
NovikovPolynomial low_part(const Rational& a) {
  NovikovPolynomial one_plus_w = P("1 + w");
  return NovikovPolynomial::monomial(1, a, 0, -2, -1) * one_plus_w * one_plus_w;
}

NovikovPolynomial full_potential(const Rational& a, long ec = 0) {
  return NovikovPolynomial::monomial(1, (1 - a) / 2, ec, 1, 0) + low_part(a);
}

NovikovPolynomial random_poly() {
  std::vector<NovikovTerm> terms;
  const long n = uniform(0, 6);
  for (long i = 0; i < n; ++i) {
    Rational c(uniform(-9, 9), uniform(1, 4));
    Rational t(uniform(-3, 12), uniform(1, 6));
    terms.push_back({c, t, uniform(-2, 2), uniform(-4, 4), uniform(-4, 4)});
  }
  return NovikovPolynomial(terms);
}

NovikovPolynomial random_monomial() {
  return NovikovPolynomial::monomial(Rational(uniform(1, 5), uniform(1, 3)), Rational(uniform(0, 6), uniform(1, 4)),
                                     uniform(-1, 1), uniform(-3, 3), uniform(-3, 3));
}

}  // namespace

TEST_CASE("canonical form and text format") {
  auto p = P("2*z - z + t^{1/2}*w^{-1} + 0*w");
  CHECK(p.to_string() == "z + t^{1/2}*w^{-1}");
  CHECK(P("0").is_zero());
  CHECK(NovikovPolynomial().to_string() == "0");
  CHECK(P("-8*t^{1/5}*e^{-c}*z^{-3}*w^{-1}").to_string() == "-8*t^{1/5}*e^{-c}*z^{-3}*w^{-1}");
  CHECK(P("3/2*e^{2c}").terms().front().ec == 2);
  CHECK(P("z*z^{2}") == P("z^3"));
  CHECK(code_of([] { P("z + "); }) == ErrorCode::ParseError);
  CHECK(code_of([] { P("x"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { P("t^{1/2"); }) == ErrorCode::ParseError);

  auto j = to_json(P("-8*t^{1/5}*z^{-3}*w^{-1}"));
  CHECK(j.dump() == R"([{"coeff":"-8","t":"1/5","ec":0,"z":-3,"w":-1}])");
  CHECK(polynomial_from_json(j) == P("-8*t^{1/5}*z^{-3}*w^{-1}"));
  CHECK(code_of([] { polynomial_from_json(Json::parse(R"([{"t":"1"}])")); }) == ErrorCode::SchemaError);
}

TEST_CASE("property: parse and print round trip") {
  for (int i = 0; i < 200; ++i) {
    auto p = random_poly();
    auto text = p.to_string();
    auto back = parse_polynomial(text);
    REQUIRE_MESSAGE(back == p, text);
    CHECK(back.to_string() == text);
    CHECK(polynomial_from_json(to_json(p)) == p);
  }
}

TEST_CASE("potentials from ledgers") {
  const Rational a = q("1/5");
  auto cp2 = potential_from_ledger(side_of("cp2_ta", {{"a", a}}));
  CHECK(cp2 == full_potential(a));
  CHECK(cp2 == P("t^{2/5}*z + t^{1/5}*z^{-2}*w^{-1} + 2*t^{1/5}*z^{-2} + t^{1/5}*z^{-2}*w"));

  auto p1 = potential_from_ledger(side_of("p1xp1_ta", {{"a", a}}));
  CHECK(p1 == P("t^{4/5}*z + t^{1/5}*z^{-1}*w^{-1} + 2*t^{1/5}*z^{-1} + t^{1/5}*z^{-1}*w"));

  CHECK(potential_from_ledger(side_of("bl3_clifford")).is_zero());

  auto bad = side_of("cp2_clifford");
  bad.H1_L = std::make_shared<FgAbelianGroup>(std::vector<std::string>{"x", "y", "u"}, IntMatrix::from_rows({}, 3));
  CHECK(code_of([&] { potential_from_ledger(bad); }) == ErrorCode::BasisMismatch);

  // at a = 1/3 the two area levels merge into the monotone shape
  auto mono3 = potential_from_ledger(side_of("cp2_ta", {{"a", q("1/3")}}));
  CHECK(cp2.levels().size() == 2);
  CHECK(mono3.levels() == std::vector<Rational>{q("1/3")});
  CHECK(mono3 == NovikovPolynomial::monomial(1, q("1/3"), 0, 0, 0) * (P("z") + low_part(0)));
}

TEST_CASE("truncation") {
  const Rational a = q("1/5");
  CHECK(truncate_to_level(full_potential(a), a) == low_part(a));
  CHECK(truncate_to_level(full_potential(a), q("7/9")).is_zero());
  CHECK(truncate_to_level(low_part(a), a) == low_part(a));
}

TEST_CASE("bulk deformation") {
  const Rational a = q("1/5");
  auto side = side_of("cp2_ta", {{"a", a}});
  auto p = potential_from_ledger(side);
  CHECK(bulk_deform(p, side, {{"beta", 1}}) == full_potential(a, 1));
  CHECK(bulk_deform(p, side, {{"beta", 1}}).to_string().find("e^{c}*z") != std::string::npos);
  CHECK(bulk_deform(p, side, {{"beta", 0}, {"H-2beta", 0}}) == p);
  CHECK(bulk_deform(p, side, {{"beta", 2}}) == full_potential(a, 2));
  CHECK(code_of([&] { bulk_deform(p, side, {{"nope", 1}}); }) == ErrorCode::UnknownLabel);
}

TEST_CASE("partial derivatives") {
  const Rational a = q("1/5");
  CHECK(partial_derivative(low_part(a), Variable::w) == P("t^{1/5}*z^{-2} - t^{1/5}*z^{-2}*w^{-2}"));
  CHECK(partial_derivative(P("t^{2/5}*e^{c}*z"), Variable::z) == P("t^{2/5}*e^{c}"));
  CHECK(partial_derivative(P("7/3*t^{1}"), Variable::z).is_zero());
  CHECK(partial_derivative(low_part(a), Variable::z) ==
        P("-2*t^{1/5}*z^{-3}*w^{-1} - 4*t^{1/5}*z^{-3} - 2*t^{1/5}*z^{-3}*w"));
}

TEST_CASE("property: linearity and Leibniz rule") {
  for (int i = 0; i < 200; ++i) {
    auto p = random_poly();
    auto r = random_poly();
    auto m = random_monomial();
    for (auto v : {Variable::z, Variable::w}) {
      CHECK(partial_derivative(p + r, v) == partial_derivative(p, v) + partial_derivative(r, v));
      CHECK(partial_derivative(m * p, v) == partial_derivative(m, v) * p + m * partial_derivative(p, v));
    }
  }
}

TEST_CASE("Newton valuations") {
  const Rational a = q("1/5");
  // the balance behind z^3 = 8 t^{(3a-1)/2} e^{-c}: exponents 0 and -3 of d/dz
  CHECK(newton_valuations({{(1 - a) / 2, 0}, {a, -3}}) == std::vector<Rational>{q("-1/15")});
  // same exponents shifted by z: z*d/dz has exponents 1 and -2
  CHECK(newton_valuations({{(1 - a) / 2, 1}, {a, -2}}) == std::vector<Rational>{q("-1/15")});
  // exponents 1 and -3 balance elsewhere
  CHECK(newton_valuations({{(1 - a) / 2, 1}, {a, -3}}) == std::vector<Rational>{q("-1/20")});
  CHECK(newton_valuations({{0, 0}, {0, 1}}) == std::vector<Rational>{0});
  CHECK(code_of([] { newton_valuations({{1, 2}, {0, 2}}); }) == ErrorCode::Degenerate);
  // interior point of the lower hull is not an edge
  CHECK(newton_valuations({{0, 0}, {5, 1}, {0, 2}}) == std::vector<Rational>{0});
  CHECK(newton_valuations({{0, 0}, {0, 1}, {3, 2}}) == std::vector<Rational>{-3, 0});
}

TEST_CASE("property: Newton valuations attain their minimum twice") {
  for (int i = 0; i < 300; ++i) {
    std::vector<ValuationTerm> terms;
    const long n = uniform(2, 6);
    for (long k = 0; k < n; ++k) terms.push_back({Rational(uniform(0, 12), uniform(1, 6)), uniform(-4, 4)});
    std::set<long> zs;
    for (const auto& t : terms) zs.insert(t.z);
    if (zs.size() < 2) {
      CHECK(code_of([&] { newton_valuations(terms); }) == ErrorCode::Degenerate);
      continue;
    }
    auto vals = newton_valuations(terms);
    CHECK(!vals.empty());
    for (const auto& v : vals) {
      CHECK(oracle::attains_min_twice(terms, v));
    }
  }
}

TEST_CASE("unit critical analysis of the bulk-deformed potential") {
  for (const char* as : {"1/10", "1/5", "3/10"}) {
    const Rational a = q(as);
    auto side = side_of("cp2_ta", {{"a", a}});
    auto p = bulk_deform(potential_from_ledger(side), side, {{"beta", 1}});
    auto r = unit_critical_analysis(p);
    CAPTURE(as);
    CHECK_FALSE(r.has_unit_candidate);
    REQUIRE(r.branches.size() == 2);
    CHECK(r.branches[0].w0 == -1);
    CHECK(r.branches[0].degenerate);
    CHECK(r.branches[0].dz_terms.size() == 1);
    CHECK(r.branches[1].w0 == 1);
    CHECK(r.branches[1].valuations == std::vector<Rational>{(3 * a - 1) / 6});
    CHECK(r.unanalyzed_degree == 0);
  }
  auto side = side_of("cp2_ta", {{"a", q("1/3")}});
  auto r = unit_critical_analysis(bulk_deform(potential_from_ledger(side), side, {{"beta", 1}}));
  CHECK(r.has_unit_candidate);
  CHECK(r.branches[1].valuations == std::vector<Rational>{0});
}

TEST_CASE("unit critical analysis of the low-area part") {
  auto r = unit_critical_analysis(low_part(q("1/5")));
  CHECK(r.has_unit_candidate);
  REQUIRE(r.branches.size() == 2);
  CHECK(r.branches[0].w0 == -1);
  CHECK(r.branches[0].dz_vanishes);
  CHECK(r.branches[0].unit_candidate);
  CHECK_FALSE(r.branches[1].unit_candidate);
  CHECK(r.w_polynomial == std::vector<Rational>{-1, 0, 1});

  CHECK(code_of([] { unit_critical_analysis(P("z*w + w^2")); }) == ErrorCode::UnsupportedShape);
  CHECK(code_of([] { unit_critical_analysis(P("z + z^{-1}")); }) == ErrorCode::UnsupportedShape);

  // w^3 - 2w has no rational unit root
  auto irr = unit_critical_analysis(P("1/4*w^4 - w^2 + z"));
  CHECK(irr.branches.empty());
  CHECK(irr.unanalyzed_degree == 2);
  CHECK(!irr.warnings.empty());
}

TEST_CASE("residue critical points") {
  const auto low = low_part(q("1/5"));
  const Ring Z8 = Ring::integers_mod(8);
  auto pts = residue_critical_points(low, Z8);
  bool has11 = false;
  for (const auto& [z, w] : pts) has11 = has11 || (z.integer_value() == 1 && w.integer_value() == 1);
  CHECK(has11);

  // oracle: both partials by hand, inverses by search
  for (long n : {3L, 5L, 8L, 9L, 12L}) {
    const Ring R = Ring::integers_mod(n);
    auto inv = [n](long x) {
      for (long y = 1; y < n; ++y)
        if ((x * y) % n == 1) return y;
      return -1L;
    };
    std::set<std::pair<long, long>> expected;
    for (long z = 1; z < n; ++z) {
      for (long w = 1; w < n; ++w) {
        if (inv(z) < 0 || inv(w) < 0) continue;
        long zi = inv(z), wi = inv(w);
        long dz = ((-2 * (1 + w) * (1 + w)) % n * zi % n * zi % n * zi % n * wi) % n;
        long dw = (zi * zi % n * ((1 - wi * wi) % n)) % n;
        if (((dz % n) + n) % n == 0 && ((dw % n) + n) % n == 0) expected.insert({z, w});
      }
    }
    std::set<std::pair<long, long>> got;
    for (const auto& [z, w] : residue_critical_points(low, R)) {
      got.insert({z.integer_value().convert_to<long>(), w.integer_value().convert_to<long>()});
      CHECK(evaluate(partial_derivative(low, Variable::z), z, w).is_zero());
      CHECK(evaluate(partial_derivative(low, Variable::w), z, w).is_zero());
    }
    CAPTURE(n);
    CHECK(got == expected);
    if (n == 3) CHECK(got == std::set<std::pair<long, long>>{{1, 2}, {2, 2}});
  }

  CHECK(residue_critical_points(P("5*t^{1/3}"), Z8).size() == 16);
  CHECK(code_of([&] { residue_critical_points(full_potential(q("1/5")), Z8); }) == ErrorCode::NotSingleLevel);
  CHECK(code_of([&] { residue_critical_points(low, Ring::rationals()); }) == ErrorCode::InfiniteRing);
}
