#include <catch2/catch_amalgamated.hpp>
#include <hypo/catalog.hpp>
#include <hypo/su3.hpp>

#include "oracles.hpp"

using namespace hypo;

namespace {

Mat<Rational> random_invertible(std::mt19937_64& r, int n) {
  for (;;) {
    Mat<Rational> b = zeros<Rational>(n, n);
    for (auto& row : b) row = oracle::random_vector(r, n);
    if (det(b) != 0) return b;
  }
}

}  // namespace

TEST_CASE("lift of the reference structure gives the standard 6d forms") {
  auto n = reference_su3<Rational>();
  CHECK(n.omega == parse_form("12+34+56", 6, 2));
  CHECK(n.psi_plus == parse_form("135-146-236-245", 6, 3));
  CHECK(n.psi_minus == parse_form("136+145+235-246", 6, 3));
  CHECK(validate_su3(n).ok);
}

TEST_CASE("lifts satisfy the wedge invariants") {
  for (auto& e : catalog()) CHECK(validate_su3(su3_lift(e.structure)).ok);

  auto r = oracle::rng(61);
  auto ref = reference_structure<Rational>();
  for (int trial = 0; trial < 20; ++trial) {
    auto s = pullback(ref, random_invertible(r, 5));
    auto n = su3_lift(s);
    auto v = validate_su3(n);
    REQUIRE(v.ok);
    // the invariants are equivariant, so any coframe change preserves them
    CHECK(validate_su3(pullback(n, random_invertible(r, 6))).ok);
  }
}

TEST_CASE("broken lifts are rejected") {
  auto n = reference_su3<Rational>();
  auto bad = n;
  bad.psi_plus = Rational(2) * bad.psi_plus;
  CHECK_FALSE(validate_su3(bad).ok);
  bad = n;
  bad.omega = parse_form("12", 6, 2);
  CHECK_FALSE(validate_su3(bad).ok);
}

TEST_CASE("restriction inverts the lift") {
  for (auto& e : catalog()) CHECK(su2_restrict(su3_lift(e.structure), 6) == e.structure);

  auto r = oracle::rng(62);
  auto ref = reference_structure<Rational>();
  for (int trial = 0; trial < 20; ++trial) {
    auto s = pullback(ref, random_invertible(r, 5));
    CHECK(su2_restrict(su3_lift(s), 6) == s);
  }
}

TEST_CASE("restriction of the standard 6d forms") {
  CHECK(su2_restrict(reference_su3<Rational>(), 6) == reference_structure<Rational>());

  // normal e5 exercises the renumbering; the result rotates (w2, w3) by a
  // quarter turn and flips alpha, still a valid structure
  auto s = su2_restrict(reference_su3<Rational>(), 5);
  CHECK(s == parse_su2<Rational>(5, "-5", "12+34", "14+23", "-13-42"));
  CHECK(validate(s).ok);
}

TEST_CASE("restrictions of closed ambient structures are hypo") {
  auto g6 = parse_salamon("(0,0,0,0,0,0)");
  auto g5 = parse_salamon("(0,0,0,0,0)");
  auto n0 = reference_su3<Rational>();
  REQUIRE(g6.d(n0.omega).terms().empty());
  REQUIRE(g6.d(n0.psi_plus).terms().empty());
  REQUIRE(g6.d(n0.psi_minus).terms().empty());

  auto r = oracle::rng(63);
  for (int trial = 0; trial < 10; ++trial) {
    // block changes fixing e6 keep that direction unit normal to the slice
    Mat<Rational> b5 = random_invertible(r, 5);
    Mat<Rational> b = identity<Rational>(6);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) b[i][j] = b5[i][j];
    auto s = su2_restrict(pullback(n0, b), 6);
    CHECK(s == pullback(reference_structure<Rational>(), b5));
    CHECK(validate(s).ok);
    CHECK(is_hypo(g5, s));
  }
}

TEST_CASE("conical lift agrees with the flat lift at t = 1") {
  auto s = catalog()[2].structure;
  CHECK(conical_lift(s, Rational(1)) == su3_lift(s));
  for (Rational t : {Rational(1, 2), Rational(2), Rational(3)})
    CHECK(validate_su3(conical_lift(s, t)).ok);
  CHECK_FALSE(validate_su3(conical_lift(s, Rational(0))).ok);
}
