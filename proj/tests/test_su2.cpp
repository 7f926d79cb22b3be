#include <catch2/catch_amalgamated.hpp>

#include "hypo/su2.hpp"
#include "oracles.hpp"

using namespace hypo;

namespace {

Mat<Rational> random_invertible(std::mt19937_64& r) {
  for (;;) {
    Mat<Rational> b = zeros<Rational>(5, 5);
    for (auto& row : b) row = oracle::random_vector(r, 5);
    if (det(b) != 0) return b;
  }
}

double form_gap(const Form<double>& a, const Form<double>& b) {
  return (a - b).norm();
}

}  // namespace

TEST_CASE("model structure is valid with the expected volume data") {
  auto s = reference_structure<Rational>();
  CHECK(validate(s).ok);
  CHECK(upsilon(s) == parse_form("2*1234", 5));
  CHECK(wedge(s.alpha, upsilon(s)) == parse_form("2*12345", 5));
  CHECK(reeb_vector(s) == Vec<Rational>{0, 0, 0, 0, 1});
}

TEST_CASE("validation rejects broken structures") {
  auto s = reference_structure<Rational>();

  SECTION("swapped w2 and w3 reverse the orientation") {
    std::swap(s.omega2, s.omega3);
    auto v = validate(s);
    CHECK_FALSE(v.ok);
    CHECK(v.reason == "orientation reversed");
  }
  SECTION("negated w2 reverses the orientation") {
    s.omega2 *= Rational(-1);
    CHECK_FALSE(validate(s).ok);
  }
  SECTION("scaling one form breaks the wedge normalization") {
    s.omega1 *= Rational(2);
    CHECK_FALSE(validate(s).ok);
  }
  SECTION("degenerate w1") {
    s.omega1 = parse_form("12", 5);
    CHECK_FALSE(validate(s).ok);
  }
  SECTION("alpha inside the symplectic span") {
    s.alpha = parse_form("1", 5, 1);
    auto v = validate(s);
    CHECK_FALSE(v.ok);
    CHECK(v.reason == "alpha ^ w1 ^ w1 = 0");
  }
}

TEST_CASE("every pullback of the model is valid and reeb transforms") {
  auto model = reference_structure<Rational>();
  auto r = oracle::rng(71);
  for (int trial = 0; trial < 30; ++trial) {
    Mat<Rational> b = random_invertible(r);
    auto s = pullback(model, b);
    CHECK(validate(s).ok);

    Vec<Rational> xi = reeb_vector(s);
    CHECK(s.alpha.interior(xi).coeff({}) == Rational(1));
    CHECK(s.omega1.interior(xi).is_zero());
    CHECK(s.omega2.interior(xi).is_zero());
    CHECK(s.omega3.interior(xi).is_zero());
  }
}

TEST_CASE("the two-forms share the kernel direction of the volume form") {
  auto model = reference_structure<Rational>();
  auto r = oracle::rng(79);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = pullback(model, random_invertible(r));
    Vec<Rational> xi = reeb_vector(s);
    for (auto* w : {&s.omega1, &s.omega2, &s.omega3}) {
      auto ker = annihilator(*w);
      REQUIRE(ker.size() == 1);
      Rational lam = s.alpha.interior(ker[0]).coeff({});
      REQUIRE(lam != 0);
      for (auto& c : ker[0]) c /= lam;
      CHECK(ker[0] == xi);
    }
  }
}

TEST_CASE("phi wedge conditions capture validity up to orientation") {
  auto model = reference_structure<Rational>();
  CHECK(phi_wedge_conditions(model));
  auto r = oracle::rng(83);
  for (int trial = 0; trial < 20; ++trial)
    CHECK(phi_wedge_conditions(pullback(model, random_invertible(r))));

  // an orientation flip is invisible to Phi but not to the full validation
  auto swapped = model;
  std::swap(swapped.omega2, swapped.omega3);
  CHECK(phi_wedge_conditions(swapped));
  CHECK_FALSE(validate(swapped).ok);

  auto broken = model;
  broken.omega2 = model.omega1;
  CHECK_FALSE(phi_wedge_conditions(broken));
}

TEST_CASE("rotating the complex pair preserves validity") {
  auto model = reference_structure<Rational>();
  auto r = oracle::rng(89);
  for (int trial = 0; trial < 10; ++trial) {
    auto s = pullback(model, random_invertible(r));
    auto rot = rotate_pair(s, Rational(3, 5), Rational(4, 5));
    CHECK(validate(rot).ok);
    CHECK(upsilon(rot) == upsilon(s));
  }
  CHECK_THROWS_AS(rotate_pair(model, Rational(1), Rational(1)), MathError);
}

TEST_CASE("random two-form triples are overwhelmingly invalid") {
  auto r = oracle::rng(73);
  int valid = 0;
  for (int trial = 0; trial < 50; ++trial) {
    SU2Structure<Rational> s{parse_form("5", 5, 1), oracle::random_form(r, 5, 2, 4),
                             oracle::random_form(r, 5, 2, 4), oracle::random_form(r, 5, 2, 4)};
    if (validate(s).ok) ++valid;
  }
  CHECK(valid == 0);
}

TEST_CASE("closedness conditions on the motivating nilpotent algebra") {
  auto g = parse_salamon("(0,0,0,12,13)");
  auto s = parse_su2<Rational>(5, "1", "35+24", "32+45", "34+52");
  REQUIRE(validate(s).ok);
  CHECK(is_hypo(g, s));

  auto model = reference_structure<Rational>();
  auto rep = hypo_report(g, model);
  CHECK_FALSE(rep.hypo);
  CHECK(rep.residual_dw1 > 0.5);  // d w1 = -e123 has norm 1
}

TEST_CASE("exact adapted coframe reproduces the structure") {
  auto model = reference_structure<Rational>();
  auto s = parse_su2<Rational>(5, "1", "35+24", "32+45", "34+52");
  Mat<Rational> b = adapted_coframe(s);
  CHECK(pullback(model, b) == s);

  // the model itself gets the identity coframe
  Mat<Rational> bm = adapted_coframe(model);
  CHECK(pullback(model, bm) == model);
}

TEST_CASE("exact adapted coframe handles rational rescalings") {
  auto model = reference_structure<Rational>();
  // pull back by a diagonal rational coframe change; seeds stay square
  Mat<Rational> d = identity<Rational>(5);
  d[0][0] = Rational(2);
  d[1][1] = Rational(1, 2);
  d[2][2] = Rational(3);
  d[3][3] = Rational(1, 3);
  auto s = pullback(model, d);
  Mat<Rational> b = adapted_coframe(s);
  CHECK(pullback(model, b) == s);
}

TEST_CASE("numeric adapted coframe recovers random structures") {
  auto model = reference_structure<Rational>();
  auto model_n = model.to_numeric();
  auto r = oracle::rng(79);
  for (int trial = 0; trial < 20; ++trial) {
    Mat<Rational> b = random_invertible(r);
    auto s = pullback(model, b).to_numeric();
    Mat<double> found = adapted_coframe(s);
    auto rebuilt = pullback(model_n, found);
    CHECK(form_gap(rebuilt.alpha, s.alpha) < 1e-9);
    CHECK(form_gap(rebuilt.omega1, s.omega1) < 1e-9);
    CHECK(form_gap(rebuilt.omega2, s.omega2) < 1e-9);
    CHECK(form_gap(rebuilt.omega3, s.omega3) < 1e-9);
  }
}

TEST_CASE("adapted coframe rejects invalid input") {
  auto s = reference_structure<Rational>();
  std::swap(s.omega2, s.omega3);
  CHECK_THROWS_AS(adapted_coframe(s), MathError);
}
