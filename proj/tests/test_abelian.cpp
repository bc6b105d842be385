#include <functional>
#include <memory>

#include "doctest.h"
#include "floer/abelian.hpp"
#include "floer/error.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace floer;
using testutil::ints;
using testutil::mat;

namespace {

using oracle::invariant_factors_by_minors;
using oracle::random_matrix;

GroupPtr group(std::vector<std::string> labels, IntMatrix rel) {
  return std::make_shared<const FgAbelianGroup>(std::move(labels), std::move(rel));
}

}  // namespace

TEST_CASE("smith normal form examples") {
  CHECK(smith_normal_form(IntMatrix::identity(2)).D == IntMatrix::identity(2));
  CHECK(smith_normal_form(mat({{2, 0}, {0, 3}})).D == mat({{1, 0}, {0, 6}}));
  CHECK(smith_normal_form(mat({{0}})).D == mat({{0}}));
  CHECK(smith_normal_form(mat({{0}})).rank == 0);
  CHECK(invariant_factors_by_minors(mat({{2, 0}, {0, 3}})) == ints({1, 6}));
  CHECK(oracle::smith_violation(mat({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}), true) == "");
  CHECK(smith_normal_form(mat({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}})).D == mat({{2, 0, 0}, {0, 6, 0}, {0, 0, 12}}));
}

TEST_CASE("smith normal form empty shapes") {
  IntMatrix empty(0, 3);
  SmithForm s = smith_normal_form(empty);
  CHECK(s.rank == 0);
  CHECK(s.V == IntMatrix::identity(3));
  CHECK(integer_kernel(empty).size() == 3);
}

TEST_CASE("smith normal form on 500 random matrices") {
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t rows = static_cast<std::size_t>(testutil::uniform(1, 6));
    std::size_t cols = static_cast<std::size_t>(testutil::uniform(1, 6));
    IntMatrix m = random_matrix(rows, cols);
    CAPTURE(trial);
    CHECK(oracle::smith_violation(m, rows <= 4 && cols <= 4) == "");
  }
}

TEST_CASE("integer kernel") {
  IntMatrix m = mat({{1, 2, 3}, {2, 4, 6}});
  auto k = integer_kernel(m);
  CHECK(k.size() == 2);
  for (const auto& v : k) CHECK(m(0, 0) * v[0] + m(0, 1) * v[1] + m(0, 2) * v[2] == 0);
  CHECK(integer_kernel(IntMatrix::identity(3)).empty());
}

TEST_CASE("solve_linear examples") {
  const Ring z8 = Ring::integers_mod(8);
  // j of the CP2 torus scenario: H -> H inside <H, beta, alpha>.
  IntMatrix j = mat({{1}, {0}, {0}});
  std::vector<Rational> b = {4, -8, 0};
  auto x = solve_linear(j, std::span<const Rational>(b), z8);
  REQUIRE(x);
  CHECK(testutil::coords_as_integers(*x) == ints({4}));

  std::vector<Rational> b2 = {1};
  CHECK_FALSE(solve_linear(mat({{2}}), std::span<const Rational>(b2), Ring::integers()));
  CHECK(solve_linear(mat({{2}}), std::span<const Rational>(b2), Ring::rationals())->front().value() == Rational(1, 2));
  CHECK(solve_linear(mat({{2}}), std::span<const Rational>(b2), Ring::integers_mod(5))->front().value() == 3);
  CHECK_FALSE(solve_linear(mat({{2}}), std::span<const Rational>(b2), Ring::integers_mod(8)));

  for (const auto& ring : {Ring::integers(), Ring::rationals(), z8, Ring::prime_field(3)}) {
    std::vector<Rational> v = {5, -2, 7};
    auto y = solve_linear(IntMatrix::identity(3), std::span<const Rational>(v), ring);
    REQUIRE(y);
    CHECK(*y == reduce_vector(std::span<const Rational>(v), ring));
  }

  std::vector<Rational> wrong = {1, 2};
  CHECK_THROWS_AS(solve_linear(IntMatrix::identity(3), std::span<const Rational>(wrong), z8), Error);
}

TEST_CASE("solve_linear over Z/n agrees with exhaustive search") {
  for (int trial = 0; trial < 300; ++trial) {
    long n = testutil::uniform(2, 8);
    std::size_t rows = static_cast<std::size_t>(testutil::uniform(1, 3));
    std::size_t cols = static_cast<std::size_t>(testutil::uniform(1, 3));
    IntMatrix m = random_matrix(rows, cols, -n, n);
    std::vector<Rational> b(rows);
    for (auto& x : b) x = testutil::uniform(0, n - 1);
    const Ring ring = Ring::integers_mod(n);

    const bool exists = oracle::solvable_mod_by_search(m, b, n);

    auto sol = solve_linear(m, std::span<const Rational>(b), ring);
    CAPTURE(trial);
    CHECK(sol.has_value() == exists);
    if (sol) {
      std::vector<long> xs;
      for (const auto& e : *sol) xs.push_back(static_cast<long>(e.integer_value()));
      CHECK(oracle::satisfies_mod(m, b, n, xs));
    }
  }
}

TEST_CASE("kernel over rings") {
  // 2x = 0 over Z/8 has kernel generated by 4.
  auto k = kernel_over_ring(mat({{2}}), Ring::integers_mod(8));
  REQUIRE(k.size() == 1);
  CHECK(k[0][0].value() == 4);
  CHECK(kernel_over_ring(mat({{2}}), Ring::rationals()).empty());
  CHECK(kernel_over_ring(mat({{2}}), Ring::prime_field(2)).size() == 1);
}

TEST_CASE("group structure") {
  auto g1 = FgAbelianGroup({"x", "y"}, mat({{2, 0}}));
  CHECK(group_structure(g1).rank == 1);
  CHECK(group_structure(g1).torsion == ints({2}));
  auto g2 = FgAbelianGroup({"a", "b", "c"}, IntMatrix(0, 3));
  CHECK(group_structure(g2).rank == 3);
  CHECK(group_structure(g2).torsion.empty());
  auto g3 = FgAbelianGroup({"a"}, mat({{1}}));
  CHECK(group_structure(g3).rank == 0);
  CHECK(group_structure(g3).torsion.empty());
  auto g4 = FgAbelianGroup({"a", "b"}, mat({{2, 0}, {0, 3}}));
  CHECK(group_structure(g4).torsion == ints({6}));
  CHECK_THROWS_AS(FgAbelianGroup({"a", "a"}, IntMatrix(0, 2)), Error);
  CHECK_THROWS_AS(FgAbelianGroup({"a", "b"}, mat({{1, 2, 3}})), Error);
}

TEST_CASE("element equality modulo relations") {
  auto g = group({"x", "y"}, mat({{2, 4}, {0, 6}}));
  const Ring z = Ring::integers();
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Integer> c = {testutil::uniform(-20, 20), testutil::uniform(-20, 20)};
    GroupElement e(g, std::span<const Integer>(c), z);
    // adding relation rows does not change the element
    long s = testutil::uniform(-3, 3), t = testutil::uniform(-3, 3);
    std::vector<Integer> shifted = {c[0] + 2 * s, c[1] + 4 * s + 6 * t};
    GroupElement f(g, std::span<const Integer>(shifted), z);
    CHECK(e.equals(f));
    CHECK(f.equals(e));
    CHECK(e.equals(e));
  }
  std::vector<Integer> one = {1, 0};
  CHECK_FALSE(GroupElement(g, std::span<const Integer>(one), z).is_zero());
  std::vector<Integer> rel = {2, 4};
  CHECK(GroupElement(g, std::span<const Integer>(rel), z).is_zero());
  // over Z/2 the relation module is {(0,0)}, so (0,1) survives
  std::vector<Integer> e01 = {0, 1};
  CHECK_FALSE(GroupElement(g, std::span<const Integer>(e01), Ring::integers_mod(2)).is_zero());
}

TEST_CASE("element printing") {
  auto g = group({"H1", "H2"}, IntMatrix(0, 2));
  std::vector<Integer> c = {2, -1};
  CHECK(GroupElement(g, std::span<const Integer>(c), Ring::integers()).to_string() == "2*H1 - H2");
  CHECK(GroupElement(g, std::span<const Integer>(c), Ring::integers_mod(4)).to_string() == "2*H1 + 3*H2");
  CHECK(GroupElement::zero(g, Ring::integers()).to_string() == "0");
}

TEST_CASE("homomorphisms, lifts and exactness") {
  auto hx = group({"H"}, IntMatrix(0, 1));
  auto hxl = group({"H", "beta", "alpha"}, IntMatrix(0, 3));
  auto h1 = group({"dbeta", "dalpha"}, IntMatrix(0, 2));
  GroupHom j(hx, hxl, mat({{1}, {0}, {0}}));
  GroupHom bd(hxl, h1, mat({{0, 1, 0}, {0, 0, 1}}));
  CHECK(composes_to_zero(j, bd));
  CHECK(is_exact_at_middle(j, bd));

  // dropping H from j breaks exactness; mapping H to beta breaks bd o j = 0
  GroupHom zero_j(hx, hxl, mat({{0}, {0}, {0}}));
  CHECK_FALSE(is_exact_at_middle(zero_j, bd));
  GroupHom bad_j(hx, hxl, mat({{0}, {1}, {0}}));
  CHECK_FALSE(composes_to_zero(bad_j, bd));

  std::vector<Integer> s = {4, -8, 0};
  auto lifted = j.lift(GroupElement(hxl, std::span<const Integer>(s), Ring::integers_mod(8)));
  REQUIRE(lifted);
  CHECK(lifted->to_string() == "4*H");
  CHECK_FALSE(j.lift(GroupElement(hxl, std::span<const Integer>(s), Ring::integers())));

  // relations must map into relations
  auto z2 = group({"t"}, mat({{2}}));
  auto zfree = group({"u"}, IntMatrix(0, 1));
  CHECK_THROWS_AS(GroupHom(z2, zfree, mat({{1}})), Error);
  CHECK_NOTHROW(GroupHom(zfree, z2, mat({{1}})));

  // kernel of Z -> Z/2 is generated by 2 (over Z)
  GroupHom quotient(zfree, z2, mat({{1}}));
  auto ker = quotient.kernel(Ring::integers());
  REQUIRE(ker.size() == 1);
  CHECK(abs(ker[0].coords()[0].integer_value()) == 2);
}

TEST_CASE("intersection pairing") {
  auto h = group({"H"}, IntMatrix(0, 1));
  IntersectionForm cp2(h, mat({{1}}));
  const Ring z8 = Ring::integers_mod(8);
  std::vector<Integer> four = {4}, one = {1};
  CHECK(pair(cp2, GroupElement(h, std::span<const Integer>(four), z8), GroupElement(h, std::span<const Integer>(one), z8))
            .value() == 4);

  auto p = group({"H1", "H2"}, IntMatrix(0, 2));
  IntersectionForm hyp(p, mat({{0, 1}, {1, 0}}));
  const Ring z2 = Ring::integers_mod(2);
  std::vector<Integer> x = {1, 1}, y = {0, 1};
  GroupElement ex(p, std::span<const Integer>(x), z2), ey(p, std::span<const Integer>(y), z2);
  CHECK(pair(hyp, ex, ey).value() == 1);
  CHECK(pair(hyp, ex, GroupElement::zero(p, z2)).is_zero());

  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Integer> a = {testutil::uniform(-9, 9), testutil::uniform(-9, 9)};
    std::vector<Integer> b = {testutil::uniform(-9, 9), testutil::uniform(-9, 9)};
    GroupElement ea(p, std::span<const Integer>(a), Ring::integers()), eb(p, std::span<const Integer>(b), Ring::integers());
    CHECK(pair(hyp, ea, eb) == pair(hyp, eb, ea));
  }

  CHECK_THROWS_AS(IntersectionForm(p, mat({{0, 1}, {2, 0}})), Error);
  CHECK_THROWS_AS(IntersectionForm(p, mat({{1}})), Error);

  auto torsion = group({"t"}, mat({{2}}));
  IntersectionForm tform(torsion, mat({{0}}));
  try {
    pair(tform, GroupElement::zero(torsion, Ring::integers()), GroupElement::zero(torsion, Ring::integers()));
    FAIL("expected TorsionGroup");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TorsionGroup);
  }
}
