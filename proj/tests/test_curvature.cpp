#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <functional>

#include <hypo/curvature.hpp>

using namespace hypo;

namespace {

Form<Rational> eta(int i, int c = 1) { return Form<Rational>::generator(5, i, Rational(c)); }

// left-invariant coframe of the group behind (0,0,0,12,13), coordinates
// (x1..x5, t):  e1 = dx1, e2 = dx2, e3 = dx3, e4 = dx4 + x1 dx2,
// e5 = dx5 + x1 dx3, scaled rows E^i = sigma_i(t) e^i plus E^6 = dt
Mat<double> scaled_coframe(const Vec<double>& y, const std::function<Vec<double>(double)>& sig) {
  Vec<double> s = sig(y[5]);
  Mat<double> S = zeros<double>(6, 6);
  S[0][0] = s[0];
  S[1][1] = s[1];
  S[2][2] = s[2];
  S[3][3] = s[3];
  S[3][1] = s[3] * y[0];
  S[4][4] = s[4];
  S[4][2] = s[4] * y[0];
  S[5][5] = 1.0;
  return S;
}

Mat<double> metric_at(const Vec<double>& y, const std::function<Vec<double>(double)>& sig) {
  Mat<double> S = scaled_coframe(y, sig);
  return matmul(transpose(S), S);
}

// frame components of the Levi-Civita connection from coordinate Christoffel
// symbols, everything by centered differences on the metric
std::vector<Mat<double>> coordinate_connection(const Vec<double>& y,
                                               const std::function<Vec<double>(double)>& sig) {
  const double h = 1e-3;
  Mat<double> G = metric_at(y, sig);
  Mat<double> Ginv = *inverse(G);
  Mat<double> S = scaled_coframe(y, sig);
  Mat<double> X = *inverse(S);  // frame vectors as columns

  // Richardson-extrapolated centered differences of a matrix field
  auto diff = [&](const std::function<Mat<double>(const Vec<double>&)>& F, int mu) {
    auto central = [&](double step) {
      Vec<double> up = y, dn = y;
      up[mu] += step;
      dn[mu] -= step;
      Mat<double> fu = F(up), fd = F(dn), r = zeros<double>(6, 6);
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) r[i][j] = (fu[i][j] - fd[i][j]) / (2 * step);
      return r;
    };
    Mat<double> wide = central(h), tight = central(h / 2), r = zeros<double>(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) r[i][j] = (4 * tight[i][j] - wide[i][j]) / 3;
    return r;
  };

  std::vector<Mat<double>> dG(6), dX(6);
  for (int mu = 0; mu < 6; ++mu) {
    dG[mu] = diff([&](const Vec<double>& p) { return metric_at(p, sig); }, mu);
    dX[mu] = diff([&](const Vec<double>& p) { return *inverse(scaled_coframe(p, sig)); }, mu);
  }

  // Gamma^l_{mu nu}
  std::vector<Mat<double>> Gam(6, zeros<double>(6, 6));
  for (int l = 0; l < 6; ++l)
    for (int mu = 0; mu < 6; ++mu)
      for (int nu = 0; nu < 6; ++nu) {
        double v = 0;
        for (int r = 0; r < 6; ++r)
          v += 0.5 * Ginv[l][r] * (dG[mu][r][nu] + dG[nu][r][mu] - dG[r][mu][nu]);
        Gam[l][mu][nu] = v;
      }

  // conn[a][b][c] = <nabla_{X_c} X_b, X_a> = sum_l S[a][l] (X_c^mu dX[mu][l][b]
  //                 + X_c^mu Gamma^l_{mu nu} X_b^nu)
  std::vector<Mat<double>> conn(6, zeros<double>(6, 6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      for (int c = 0; c < 6; ++c) {
        double v = 0;
        for (int mu = 0; mu < 6; ++mu) {
          double xc = X[mu][c];
          if (xc == 0.0) continue;
          for (int l = 0; l < 6; ++l) {
            double inner = dX[mu][l][b];
            for (int nu = 0; nu < 6; ++nu) inner += Gam[l][mu][nu] * X[nu][b];
            v += S[a][l] * xc * inner;
          }
        }
        conn[a][b][c] = v;
      }
  return conn;
}

CoframeJet jet_at(const DiagonalAnsatz& a, double t, const Vec<double>& s,
                  const Vec<double>& sd, const Vec<double>& sdd) {
  return coframe_jet(a, t, s, sd, sdd);
}

}  // namespace

TEST_CASE("closed-form scaling second derivatives match centered differences") {
  const double d = 1e-5;
  PowerLawSolution pw(-2, 1, 1);
  for (double t : {-0.5, 0.0, 0.3}) {
    auto dd = pw.state_ddot(t);
    auto up = pw.state_dot(t + d), dn = pw.state_dot(t - d);
    for (int i = 0; i < 2; ++i)
      REQUIRE(std::fabs((up[i] - dn[i]) / (2 * d) - dd[i]) < 1e-6);
  }
  SineSolution sn;
  for (double u : {-0.8, 0.0, 0.9}) {
    double t = SineSolution::t_of_u(u);
    auto dd = sn.state_ddot(t);
    auto up = sn.state_dot(t + d), dn = sn.state_dot(t - d);
    for (int i = 0; i < 2; ++i)
      REQUIRE(std::fabs((up[i] - dn[i]) / (2 * d) - dd[i]) < 1e-6);
  }
}

TEST_CASE("directional difference of the flow rhs reproduces closed-form curvature of s") {
  auto a = power_law_ansatz();
  PowerLawSolution pw(-2, 1, 1);
  for (double t : {-0.5, 0.0, 0.3}) {
    auto got = flow_second_derivative(a, pw.state(t));
    auto want = pw.state_ddot(t);
    for (int i = 0; i < 2; ++i) REQUIRE(std::fabs(got[i] - want[i]) < 1e-6);
  }
  auto b = sine_ansatz();
  SineSolution sn;
  for (double u : {-0.8, 0.0, 0.9}) {
    double t = SineSolution::t_of_u(u);
    auto got = flow_second_derivative(b, sn.state(t));
    auto want = sn.state_ddot(t);
    for (int i = 0; i < 2; ++i) REQUIRE(std::fabs(got[i] - want[i]) < 1e-6);
  }
}

TEST_CASE("abelian frame is flat") {
  auto g = parse_salamon("(0,0,0,0,0)").to_numeric();
  auto lc = levi_civita(static_frame(g));
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) REQUIRE(lc.omega[a][b].is_zero());
  REQUIRE(lc.structure_residual == 0.0);
  auto cv = curvature(lc, static_frame(g));
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) REQUIRE(cv.omega[a][b].is_zero());
    REQUIRE(cv.ricci[a][a] == 0.0);
  }
  REQUIRE(cv.scalar == 0.0);
}

TEST_CASE("round three-sphere frame has constant curvature one") {
  // dE^i = 2 E^j ^ E^k cyclically: the unit-radius invariant metric
  LieAlgebra<double> g;
  g.dim = 3;
  g.de = {Form<double>::monomial(3, {2, 3}, 2.0), Form<double>::monomial(3, {1, 3}, -2.0),
          Form<double>::monomial(3, {1, 2}, 2.0)};
  REQUIRE(g.satisfies_jacobi());
  auto fd = static_frame(g);
  auto lc = levi_civita(fd);
  REQUIRE(lc.structure_residual < 1e-15);
  REQUIRE(nearly_equal(lc.omega[2][1], Form<double>::generator(3, 1, -1.0)));
  REQUIRE(nearly_equal(lc.omega[0][2], Form<double>::generator(3, 2, -1.0)));
  REQUIRE(nearly_equal(lc.omega[1][0], Form<double>::generator(3, 3, -1.0)));
  auto cv = curvature(lc, fd);
  REQUIRE(nearly_equal(cv.omega[2][1], Form<double>::monomial(3, {2, 3}, -1.0)));
  for (int j = 0; j < 3; ++j)
    for (int l = 0; l < 3; ++l) REQUIRE(cv.ricci[j][l] == Catch::Approx(j == l ? 2.0 : 0.0).margin(1e-14));
  REQUIRE(cv.scalar == Catch::Approx(6.0).margin(1e-13));
  REQUIRE(cv.bianchi_residual < 1e-14);
  REQUIRE(cv.symmetry_residual < 1e-14);
}

TEST_CASE("orthonormality guard rejects a scaled gram matrix") {
  auto g = parse_salamon("(0,0,0,0,0)").to_numeric();
  auto fd = static_frame(g);
  fd.gram = identity<double>(5);
  REQUIRE_NOTHROW(levi_civita(fd));
  fd.gram[0][0] = 2.0;
  REQUIRE_THROWS_AS(levi_civita(fd), MathError);
}

TEST_CASE("invariant frame connection on (0,0,0,12,13+24) matches the known matrix") {
  auto g = parse_salamon("(0,0,0,12,13+24)");
  auto s = parse_su2<Rational>(5, "1+5", "-43+25", "42-53", "45-32");
  REQUIRE(validate(s).ok);
  REQUIRE(is_hypo(g, s));

  // orthonormal frame eta = (e4, -e3, e2, e5, e1+e5) adapted to the structure
  Mat<Rational> B = {{Rational(0), Rational(0), Rational(0), Rational(1), Rational(0)},
                     {Rational(0), Rational(0), Rational(-1), Rational(0), Rational(0)},
                     {Rational(0), Rational(1), Rational(0), Rational(0), Rational(0)},
                     {Rational(0), Rational(0), Rational(0), Rational(0), Rational(1)},
                     {Rational(1), Rational(0), Rational(0), Rational(0), Rational(1)}};
  REQUIRE(pullback(reference_structure<Rational>(), B) == s);
  auto galg = change_coframe(g, B, *inverse(B));

  auto fd = static_frame(galg);
  auto lc = levi_civita(fd);
  REQUIRE(lc.structure_residual == 0.0);

  std::vector<std::vector<Form<Rational>>> want(5, std::vector<Form<Rational>>(5, Form<Rational>(5, 1)));
  want[0][2] = eta(4);
  want[0][4] = eta(3);
  want[1][3] = eta(4);
  want[1][4] = eta(5, -1);
  want[2][3] = eta(1, -1);
  want[3][4] = eta(2, -1);
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < a; ++b) want[a][b] = -want[b][a];
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) REQUIRE(lc.omega[a][b] == want[a][b]);
}

TEST_CASE("covariant derivative of the shape tensor on (0,0,0,12,13+24)") {
  auto g = parse_salamon("(0,0,0,12,13+24)");
  Mat<Rational> B = {{Rational(0), Rational(0), Rational(0), Rational(1), Rational(0)},
                     {Rational(0), Rational(0), Rational(-1), Rational(0), Rational(0)},
                     {Rational(0), Rational(1), Rational(0), Rational(0), Rational(0)},
                     {Rational(0), Rational(0), Rational(0), Rational(0), Rational(1)},
                     {Rational(1), Rational(0), Rational(0), Rational(0), Rational(1)}};
  auto fd = static_frame(change_coframe(g, B, *inverse(B)));

  Mat<Rational> theta = zeros<Rational>(5, 5);
  theta[0][4] = theta[4][0] = Rational(-1);
  theta[1][2] = theta[2][1] = Rational(-1);
  auto nt = nabla_theta(fd, theta);

  std::vector<std::vector<Form<Rational>>> want(5, std::vector<Form<Rational>>(5, Form<Rational>(5, 1)));
  want[0][0] = eta(3, -2);
  want[0][1] = eta(5) - eta(4);
  want[0][3] = eta(2);
  want[1][3] = eta(1, -1);
  want[2][3] = eta(4);
  want[2][4] = eta(4) - eta(5);
  want[4][4] = eta(3, 2);
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < a; ++b) want[a][b] = want[b][a];
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) REQUIRE(nt[a][b] == want[a][b]);

  REQUIRE(codazzi_check(nt) > 0.0);

  // any multiple of the identity is parallel, even on this curved frame
  Mat<Rational> mid = zeros<Rational>(5, 5);
  for (int i = 0; i < 5; ++i) mid[i][i] = Rational(-1);
  auto flatnt = nabla_theta(fd, mid);
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) REQUIRE(flatnt[a][b].is_zero());
  REQUIRE(codazzi_check(flatnt) == 0.0);

  auto zeront = nabla_theta(fd, zeros<Rational>(5, 5));
  REQUIRE(codazzi_check(zeront) == 0.0);

  Mat<Rational> skew = zeros<Rational>(5, 5);
  skew[0][1] = Rational(1);
  REQUIRE_THROWS_AS(nabla_theta(fd, skew), MathError);
}

TEST_CASE("cylinder frame differentials close and their rates match differences") {
  auto a = power_law_ansatz();
  PowerLawSolution pw(-2, 1, 1);
  double t = 0.2;
  auto fd = jet_at(a, t, pw.state(t), pw.state_dot(t), pw.state_ddot(t));
  auto frame = cylinder_frame(a.algebra, fd);
  LieAlgebra<double> frozen{6, frame.de};
  Form<double> e6 = Form<double>::generator(6, 6);
  for (int i = 0; i < 6; ++i)
    REQUIRE(nearly_zero(frozen.d(frame.de[i]) + wedge(e6, frame.de_dot[i])));

  const double d = 1e-4;
  auto up = cylinder_frame(a.algebra, jet_at(a, t + d, pw.state(t + d), pw.state_dot(t + d),
                                             pw.state_ddot(t + d)));
  auto dn = cylinder_frame(a.algebra, jet_at(a, t - d, pw.state(t - d), pw.state_dot(t - d),
                                             pw.state_ddot(t - d)));
  for (int i = 0; i < 6; ++i) {
    Form<double> rate = (1 / (2 * d)) * (up.de[i] - dn.de[i]);
    REQUIRE(sup_coeff(rate - frame.de_dot[i]) < 1e-6);
  }
}

TEST_CASE("connection on the evolving metrics matches a coordinate christoffel oracle") {
  struct Case {
    DiagonalAnsatz ansatz;
    std::function<Vec<double>(double)> state, state_dot, state_ddot;
    std::vector<double> times;
  };
  PowerLawSolution pw(-2, 1, 1);
  SineSolution sn;
  std::vector<Case> cases;
  cases.push_back({power_law_ansatz(), [&](double t) { return pw.state(t); },
                   [&](double t) { return pw.state_dot(t); },
                   [&](double t) { return pw.state_ddot(t); },
                   {-1.0, 0.0, 0.4}});
  cases.push_back({sine_ansatz(), [&](double t) { return sn.state(t); },
                   [&](double t) { return sn.state_dot(t); },
                   [&](double t) { return sn.state_ddot(t); },
                   {SineSolution::t_of_u(-1), 0.0, SineSolution::t_of_u(1)}});

  for (auto& cs : cases) {
    auto sig = [&](double t) { return detail::index_scales(cs.ansatz, cs.state(t)); };
    for (double t : cs.times) {
      auto frame = cylinder_frame(
          cs.ansatz.algebra, jet_at(cs.ansatz, t, cs.state(t), cs.state_dot(t), cs.state_ddot(t)));
      auto lc = levi_civita(frame);
      REQUIRE(lc.structure_residual < 1e-9);

      Vec<double> y = {0.3, -0.2, 0.5, 0.1, -0.4, t};
      auto conn = coordinate_connection(y, sig);
      for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
          for (int c = 0; c < 6; ++c)
            REQUIRE(std::fabs(lc.omega[a][b].coeff({c + 1}) - conn[a][b][c]) < 1e-7);
    }
  }
}

TEST_CASE("both evolving metrics are ricci flat with holonomy inside su(3)") {
  struct Sample {
    double t;
    CurvatureData<double> curv;
  };
  auto run = [](const DiagonalAnsatz& a, const std::vector<Vec<double>>& jets3,
                const std::vector<double>& times) {
    std::vector<CurvatureData<double>> curvs;
    for (std::size_t i = 0; i < times.size(); ++i) {
      auto frame = cylinder_frame(
          a.algebra, coframe_jet(a, times[i], jets3[3 * i], jets3[3 * i + 1], jets3[3 * i + 2]));
      auto lc = levi_civita(frame);
      REQUIRE(lc.structure_residual < 1e-9);
      auto cv = curvature(lc, frame);
      REQUIRE(cv.symmetry_residual < 1e-12);
      REQUIRE(cv.bianchi_residual < 1e-8);
      double ric = 0;
      for (int j = 0; j < 6; ++j)
        for (int l = 0; l < 6; ++l) ric = std::max(ric, std::fabs(cv.ricci[j][l]));
      REQUIRE(ric < 1e-8);
      REQUIRE(std::fabs(cv.scalar) < 1e-8);
      curvs.push_back(cv);
    }
    return curvs;
  };

  PowerLawSolution pw(-2, 1, 1);
  std::vector<Vec<double>> pj;
  for (double t : {-1.0, 0.0, 0.4}) {
    pj.push_back(pw.state(t));
    pj.push_back(pw.state_dot(t));
    pj.push_back(pw.state_ddot(t));
  }
  auto a1 = power_law_ansatz();
  auto curves1 = run(a1, pj, {-1.0, 0.0, 0.4});
  auto span1 = holonomy_span(curves1, su3_lift(a1.base));
  REQUIRE(span1.dimension == 8);
  REQUIRE(span1.contained_in_su3);

  SineSolution sn;
  std::vector<double> times2 = {SineSolution::t_of_u(-1), 0.0, SineSolution::t_of_u(1)};
  std::vector<Vec<double>> sj;
  for (double t : times2) {
    sj.push_back(sn.state(t));
    sj.push_back(sn.state_dot(t));
    sj.push_back(sn.state_ddot(t));
  }
  auto a2 = sine_ansatz();
  auto curves2 = run(a2, sj, times2);
  auto span2 = holonomy_span(curves2, su3_lift(a2.base));
  REQUIRE(span2.dimension == 8);
  REQUIRE(span2.contained_in_su3);
}

TEST_CASE("flat cylinder has trivial holonomy span") {
  auto g = parse_salamon("(0,0,0,0,0)").to_numeric();
  CoframeJet j;
  j.t = 0;
  j.sigma = Vec<double>(5, 1.0);
  j.sigma_dot = Vec<double>(5, 0.0);
  j.sigma_ddot = Vec<double>(5, 0.0);
  auto frame = cylinder_frame(g, j);
  auto lc = levi_civita(frame);
  auto cv = curvature(lc, frame);
  auto model = reference_structure<Rational>().to_numeric();
  auto span = holonomy_span({cv}, su3_lift(model));
  REQUIRE(span.dimension == 0);
  REQUIRE(span.contained_in_su3);
  REQUIRE_THROWS_AS(holonomy_span({}, su3_lift(model)), MathError);
}
