#pragma once
// Levi-Civita connection and curvature of an orthonormal coframe whose
// exterior derivatives are known in the coframe span.  Frames may carry a
// first-order time dependence (cylinder direction = last index); coefficient
// derivatives ride along so that d acts as d_frame + E^n ^ d/dt.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include <hypo/flow.hpp>

namespace hypo {

// orthonormal coframe E^1..E^n with dE^i known as 2-forms; de_dot holds the
// time derivative of each coefficient (all zero for a static frame).  A
// non-empty gram matrix asserts the inner products of the coframe and must
// be the identity.
template <class K> struct FrameData {
  std::vector<Form<K>> de;
  std::vector<Form<K>> de_dot;
  Mat<K> gram;
  int dim() const { return int(de.size()); }
};

template <class K> FrameData<K> static_frame(const LieAlgebra<K>& g) {
  FrameData<K> f;
  f.de = g.de;
  f.de_dot.assign(g.dim, Form<K>(g.dim, 2));
  return f;
}

// scale factors with two derivatives, enough to differentiate the connection
struct CoframeJet {
  double t = 0.0;
  Vec<double> sigma;
  Vec<double> sigma_dot;
  Vec<double> sigma_ddot;
};

inline CoframeJet coframe_jet(const DiagonalAnsatz& a, double t, const Vec<double>& s,
                              const Vec<double>& sdot, const Vec<double>& sddot) {
  CoframeJet j;
  j.t = t;
  j.sigma = detail::index_scales(a, s);
  std::size_t n = j.sigma.size();
  j.sigma_dot.assign(n, 0.0);
  j.sigma_ddot.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double rate = 0.0, curv = 0.0;
    for (int g = 0; g < a.groups(); ++g) {
      double x = sdot[g] / s[g];
      rate += a.exponents[i][g] * x;
      curv += a.exponents[i][g] * (sddot[g] / s[g] - x * x);
    }
    j.sigma_dot[i] = j.sigma[i] * rate;
    j.sigma_ddot[i] = j.sigma[i] * (rate * rate + curv);
  }
  return j;
}

// E^i = sigma_i e^i, E^n = dt:
//   dE^i = (sigma_i'/sigma_i) E^n ^ E^i + sigma_i de^i|_{e^j -> E^j/sigma_j}
inline FrameData<double> cylinder_frame(const LieAlgebra<double>& g, const CoframeJet& jet) {
  int n = g.dim + 1;
  FrameData<double> f;
  f.de.assign(n, Form<double>(n, 2));
  f.de_dot.assign(n, Form<double>(n, 2));
  for (int i = 0; i < g.dim; ++i) {
    double r = jet.sigma_dot[i] / jet.sigma[i];
    double rdot = jet.sigma_ddot[i] / jet.sigma[i] - r * r;
    f.de[i] += wedge(Form<double>::generator(n, n, r), Form<double>::generator(n, i + 1));
    f.de_dot[i] += wedge(Form<double>::generator(n, n, rdot), Form<double>::generator(n, i + 1));
    for (auto& [m, c] : g.de[i].terms()) {
      auto jk = mono_indices(m);
      double w = c * jet.sigma[i] / (jet.sigma[jk[0] - 1] * jet.sigma[jk[1] - 1]);
      double wr = r - jet.sigma_dot[jk[0] - 1] / jet.sigma[jk[0] - 1] -
                  jet.sigma_dot[jk[1] - 1] / jet.sigma[jk[1] - 1];
      f.de[i].add_term(m, w);
      f.de_dot[i].add_term(m, w * wr);
    }
  }
  return f;
}

template <class K> struct ConnectionForms {
  std::vector<std::vector<Form<K>>> omega;      // omega[a][b], one-forms, antisymmetric
  std::vector<std::vector<Form<K>>> omega_dot;  // time derivative of each coefficient
  double structure_residual = 0.0;              // sup |dE^a + omega[a][b] ^ E^b|
};

namespace detail {

// dE^i(E_j, E_k) off the monomial coefficients
template <class K>
K frame_coeff(const Form<K>& f, int j, int k) {
  if (j == k) return K(0);
  if (j < k) return f.coeff({j, k});
  return -f.coeff({k, j});
}

}  // namespace detail

// unique antisymmetric solution of dE^a + omega[a][b] ^ E^b = 0 on an
// orthonormal coframe: omega[a][b](E_i) = (A(i,b,a) + A(b,i,a) - A(a,i,b)) / 2
// with A(i,j,k) = dE^i(E_j, E_k)
template <class K> ConnectionForms<K> levi_civita(const FrameData<K>& f) {
  int n = f.dim();
  if (!f.gram.empty())
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!scalar_traits<K>::negligible(f.gram[i][j] - K(i == j ? 1 : 0)))
          throw MathError("coframe is not orthonormal");
  auto gamma = [&](const std::vector<Form<K>>& de, int i, int b, int a) {
    K v = detail::frame_coeff(de[i], b + 1, a + 1) + detail::frame_coeff(de[b], i + 1, a + 1) -
          detail::frame_coeff(de[a], i + 1, b + 1);
    return v / K(2);
  };
  ConnectionForms<K> c;
  c.omega.assign(n, std::vector<Form<K>>(n, Form<K>(n, 1)));
  c.omega_dot.assign(n, std::vector<Form<K>>(n, Form<K>(n, 1)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      for (int i = 0; i < n; ++i) {
        K v = gamma(f.de, i, b, a);
        if (!scalar_traits<K>::is_zero(v)) c.omega[a][b].add_term(Monomial(1) << i, v);
        K vd = gamma(f.de_dot, i, b, a);
        if (!scalar_traits<K>::is_zero(vd)) c.omega_dot[a][b].add_term(Monomial(1) << i, vd);
      }
    }
  for (int a = 0; a < n; ++a) {
    Form<K> res = f.de[a], res_dot = f.de_dot[a];
    for (int b = 0; b < n; ++b) {
      Form<K> eb = Form<K>::generator(n, b + 1);
      res += wedge(c.omega[a][b], eb);
      res_dot += wedge(c.omega_dot[a][b], eb);
    }
    c.structure_residual = std::max({c.structure_residual, sup_coeff(res), sup_coeff(res_dot)});
  }
  return c;
}

template <class K> struct CurvatureData {
  std::vector<std::vector<Form<K>>> omega;  // curvature 2-forms, antisymmetric
  Mat<K> ricci;
  K scalar = K(0);
  double bianchi_residual = 0.0;   // sup |omega[a][b] ^ E^b|
  double symmetry_residual = 0.0;  // sup |ricci - ricci^T|
};

template <class K>
CurvatureData<K> curvature(const ConnectionForms<K>& c, const FrameData<K>& f) {
  int n = f.dim();
  LieAlgebra<K> frame{n, f.de};
  Form<K> en = Form<K>::generator(n, n);
  CurvatureData<K> r;
  r.omega.assign(n, std::vector<Form<K>>(n, Form<K>(n, 2)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      Form<K> om = frame.d(c.omega[a][b]) + wedge(en, c.omega_dot[a][b]);
      for (int k = 0; k < n; ++k) om += wedge(c.omega[a][k], c.omega[k][b]);
      r.omega[a][b] = om;
    }
  r.ricci = zeros<K>(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      K v(0);
      for (int i = 0; i < n; ++i) v += detail::frame_coeff(r.omega[i][l], i + 1, j + 1);
      r.ricci[j][l] = v;
    }
  for (int j = 0; j < n; ++j) {
    r.scalar += r.ricci[j][j];
    for (int l = 0; l < n; ++l)
      r.symmetry_residual = std::max(
          r.symmetry_residual, scalar_traits<K>::abs_value(r.ricci[j][l] - r.ricci[l][j]));
  }
  for (int a = 0; a < n; ++a) {
    Form<K> bi(n, 3);
    for (int b = 0; b < n; ++b) bi += wedge(r.omega[a][b], Form<K>::generator(n, b + 1));
    r.bianchi_residual = std::max(r.bianchi_residual, sup_coeff(bi));
  }
  return r;
}

// J in the orthonormal frame, recovered from (JX)^flat = X -| omega
inline Mat<double> complex_structure_matrix(const SU3Structure<double>& s) {
  int n = s.dim();
  Mat<double> J = zeros<double>(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) J[a][b] = detail::frame_coeff(s.omega, b + 1, a + 1);
  Mat<double> J2 = matmul(J, J);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!scalar_traits<double>::negligible(J2[i][j] + (i == j ? 1.0 : 0.0)))
        throw MathError("two-form does not induce a complex structure on the frame");
  return J;
}

struct HolonomySpan {
  std::vector<Mat<double>> generators;  // curvature values Omega(E_i, E_j)
  int dimension = 0;
  bool contained_in_su3 = false;
  double max_su3_residual = 0.0;
};

// span of the curvature endomorphisms over all sampled points, an
// Ambrose-Singer lower bound for the holonomy algebra; containment in su(3)
// means [m, J] = 0 and trace(J m) = 0 for every generator
inline HolonomySpan holonomy_span(const std::vector<CurvatureData<double>>& samples,
                                  const SU3Structure<double>& s) {
  if (samples.empty()) throw MathError("holonomy span needs at least one curvature sample");
  Mat<double> J = complex_structure_matrix(s);
  int n = int(J.size());
  HolonomySpan h;
  for (auto& cd : samples)
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        Mat<double> m = zeros<double>(n, n);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) m[a][b] = detail::frame_coeff(cd.omega[a][b], i, j);
        h.generators.push_back(m);
      }
  Eigen::MatrixXd M(h.generators.size(), n * n);
  double scale = 1.0;
  for (std::size_t r = 0; r < h.generators.size(); ++r)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        M(r, a * n + b) = h.generators[r][a][b];
        scale = std::max(scale, std::fabs(h.generators[r][a][b]));
      }
  auto sv = M.bdcSvd().singularValues();
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-7) ++h.dimension;
  for (auto& m : h.generators) {
    Mat<double> comm = matmul(m, J);
    Mat<double> jm = matmul(J, m);
    double tr = 0.0;
    for (int a = 0; a < n; ++a) {
      tr += jm[a][a];
      for (int b = 0; b < n; ++b)
        h.max_su3_residual = std::max(h.max_su3_residual, std::fabs(comm[a][b] - jm[a][b]));
    }
    h.max_su3_residual = std::max(h.max_su3_residual, std::fabs(tr));
  }
  h.contained_in_su3 = h.max_su3_residual <= 1e-7 * scale;
  return h;
}

// covariant derivative of a constant symmetric tensor over the frame:
// (nabla Theta)_{jk} = -sum_m (Theta_{mk} omega[m][j] + Theta_{jm} omega[m][k])
template <class K>
std::vector<std::vector<Form<K>>> nabla_theta(const FrameData<K>& f, const Mat<K>& theta) {
  int n = f.dim();
  if (int(theta.size()) != n) throw MathError("tensor size does not match the frame");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!scalar_traits<K>::is_zero(theta[i][j] - theta[j][i]))
        throw MathError("tensor must be symmetric");
  auto c = levi_civita(f);
  std::vector<std::vector<Form<K>>> t(n, std::vector<Form<K>>(n, Form<K>(n, 1)));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int m = 0; m < n; ++m)
        t[j][k] += (-theta[m][k]) * c.omega[m][j] + (-theta[j][m]) * c.omega[m][k];
  return t;
}

// max over triples of |(nabla_{E_i} Theta)(E_j, E_k) - (nabla_{E_j} Theta)(E_i, E_k)|;
// zero exactly when Theta satisfies the Codazzi equation
template <class K>
double codazzi_check(const std::vector<std::vector<Form<K>>>& table) {
  int n = int(table.size());
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        K d = table[j][k].coeff({i + 1}) - table[i][k].coeff({j + 1});
        worst = std::max(worst, scalar_traits<K>::abs_value(d));
      }
  return worst;
}

}  // namespace hypo
