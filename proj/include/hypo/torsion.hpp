#pragma once
// Decomposition of (d alpha, d w_i) into the irreducible pieces attached to
// an SU(2)-structure:
//
//   d alpha = f^1 w1 + f^2 w2 + f^3 w3 + alpha ^ beta + wminus
//   d w_i   = alpha ^ (sum_j F[i][j] w_j + sigma_i) + gamma_i ^ w_i
//
// with beta, gamma_i horizontal 1-forms and wminus, sigma_i in the
// 3-dimensional complement of span{w1,w2,w3} inside horizontal 2-forms.
// The wedge identities w_i ^ w_j = delta_ij v force F = lambda I + G with
// G antisymmetric; that identity is recomputed and enforced here.
//
// Everything is built from contractions with the Reeb vector and 4-form
// ratios, so no adapted coframe (and no square root) is ever needed.

#include <array>

#include "hypo/su2.hpp"

namespace hypo {

template <class K>
struct Torsion {
  Vec<K> f_alpha;                // 3 coefficients of d alpha on w1,w2,w3
  Form<K> beta;                  // horizontal 1-form in d alpha
  Form<K> wminus;                // residual 2-form of d alpha
  Mat<K> fmat;                   // 3x3 matrix F above
  K lambda;                      // common diagonal of F
  Mat<K> g;                      // antisymmetric part of F
  std::array<Form<K>, 3> sigma;  // residual 2-forms of d w_i
  std::array<Form<K>, 3> gamma;  // 1-forms with gamma_i ^ w_i = d w_i - alpha ^ tau_i
};

namespace detail {

// Ratio a / b of proportional nonzero-denominator forms of equal degree.
template <class K>
K form_ratio(const Form<K>& a, const Form<K>& b) {
  const K* best = nullptr;
  Monomial where = 0;
  double mag = 0;
  for (auto& [m, c] : b.terms()) {
    double v = scalar_traits<K>::abs_value(c);
    if (!best || v > mag) { best = &c; where = m; mag = v; }
  }
  if (!best) throw MathError("ratio against the zero form");
  auto it = a.terms().find(where);
  K r = (it == a.terms().end()) ? K(0) : K(it->second / *best);
  Form<K> residue = a - r * b;
  if (!nearly_zero(residue, std::max(1.0, sup_coeff(a))))
    throw MathError("forms are not proportional");
  return r;
}

// Unique horizontal 1-form gamma with gamma ^ w = rho, gamma(xi) = 0.
template <class K>
Form<K> divide_by_two_form(const Form<K>& rho, const Form<K>& w, const Vec<K>& xi) {
  int n = rho.dim();
  std::map<Monomial, std::size_t> rows;
  std::vector<Form<K>> images;
  for (int i = 1; i <= n; ++i) {
    images.push_back(wedge(Form<K>::generator(n, i), w));
    for (auto& [m, c] : images.back().terms()) rows.emplace(m, rows.size());
  }
  for (auto& [m, c] : rho.terms()) rows.emplace(m, rows.size());
  Mat<K> a = zeros<K>(rows.size() + 1, n);
  Vec<K> b(rows.size() + 1, K(0));
  for (int i = 1; i <= n; ++i)
    for (auto& [m, c] : images[i - 1].terms()) a[rows[m]][i - 1] = c;
  for (auto& [m, c] : rho.terms()) b[rows[m]] = c;
  for (int i = 0; i < n; ++i) a[rows.size()][i] = xi[i];
  auto x = solve(a, b);
  if (!x) throw MathError("3-form is not divisible by the given 2-form");
  return Form<K>::one_form(n, *x);
}

}  // namespace detail

// Decompose given differentials; used directly for synthetic torsion input.
template <class K>
Torsion<K> torsion_given(const SU2Structure<K>& s, const Form<K>& da,
                         const std::array<Form<K>, 3>& dw) {
  Validation val = validate(s);
  if (!val.ok) throw MathError("not an SU(2)-structure: " + val.reason);
  Form<K> v = upsilon(s);
  Vec<K> xi = reeb_vector(s);
  const Form<K> w[3] = {s.omega1, s.omega2, s.omega3};

  Torsion<K> t;
  t.beta = da.interior(xi);
  Form<K> tau = da - wedge(s.alpha, t.beta);
  t.f_alpha.assign(3, K(0));
  t.wminus = tau;
  for (int j = 0; j < 3; ++j) {
    t.f_alpha[j] = detail::form_ratio(wedge(tau, w[j]), v);
    t.wminus -= t.f_alpha[j] * w[j];
  }

  t.fmat = zeros<K>(3, 3);
  for (int i = 0; i < 3; ++i) {
    Form<K> tau_i = dw[i].interior(xi);
    t.sigma[i] = tau_i;
    for (int j = 0; j < 3; ++j) {
      t.fmat[i][j] = detail::form_ratio(wedge(tau_i, w[j]), v);
      t.sigma[i] -= t.fmat[i][j] * w[j];
    }
    Form<K> rho = dw[i] - wedge(s.alpha, tau_i);
    t.gamma[i] = detail::divide_by_two_form(rho, w[i], xi);
  }

  // The wedge identities force F symmetric-traceless-free; recompute and check.
  t.lambda = (t.fmat[0][0] + t.fmat[1][1] + t.fmat[2][2]) / K(3);
  t.g = zeros<K>(3, 3);
  double fscale = 1.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      fscale = std::max(fscale, scalar_traits<K>::abs_value(t.fmat[i][j]));
  const K half = K(1) / K(2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      t.g[i][j] = (t.fmat[i][j] - t.fmat[j][i]) * half;
      K sym = (t.fmat[i][j] + t.fmat[j][i]) * half - (i == j ? t.lambda : K(0));
      if (!scalar_traits<K>::negligible(sym, fscale))
        throw MathError("wedge identities violated in the torsion matrix");
    }
  return t;
}

template <class K>
Torsion<K> torsion(const LieAlgebra<K>& g, const SU2Structure<K>& s) {
  return torsion_given(s, g.d(s.alpha), {g.d(s.omega1), g.d(s.omega2), g.d(s.omega3)});
}

// The transcription of the closedness conditions into torsion components:
// f^2 = f^3 = 0, lambda = 0, G[0][1] = G[0][2] = 0, sigma_1 = 0,
// gamma_1 = 0, gamma_2 = gamma_3 = beta.
template <class K>
bool matches_hypo_pattern(const Torsion<K>& t) {
  double fscale = 1.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      fscale = std::max(fscale, scalar_traits<K>::abs_value(t.fmat[i][j]));
  auto zero = [&](const K& x) { return scalar_traits<K>::negligible(x, fscale); };
  double bscale = std::max(1.0, sup_coeff(t.beta));
  return zero(t.f_alpha[1]) && zero(t.f_alpha[2]) && zero(t.lambda) &&
         zero(t.g[0][1]) && zero(t.g[0][2]) && nearly_zero(t.sigma[0], fscale) &&
         nearly_zero(t.gamma[0], bscale) && nearly_zero(t.gamma[1] - t.beta, bscale) &&
         nearly_zero(t.gamma[2] - t.beta, bscale);
}

// ---- shape operator of a closed structure ---------------------------------
//
// In an adapted coframe the differentials of a closed structure are those of
// a metric connection whose so(5)-valued form is parameterized by a symmetric
// matrix A (the su(2)-part p,q,r drops out of all four differentials):
//
//   o12=p    o13=q    o14=r     o15=-A^2
//   o23=-r   o24=q    o25=A^1
//   o34=-p+A^5        o35=-A^4
//   o45=A^3
//
// with A^k the 1-form given by row k of A. The map A -> torsion components
// is linear; building it column by column and inverting recovers A.

template <class K>
LieAlgebra<K> connection_differentials(const Mat<K>& A, const Form<K>& p,
                                       const Form<K>& q, const Form<K>& r) {
  auto arow = [&](int k) {
    Vec<K> row(5, K(0));
    for (int j = 0; j < 5; ++j) row[j] = A[k - 1][j];
    return Form<K>::one_form(5, row);
  };
  std::map<std::pair<int, int>, Form<K>> o;
  o[{1, 2}] = p;
  o[{1, 3}] = q;
  o[{1, 4}] = r;
  o[{1, 5}] = -arow(2);
  o[{2, 3}] = -r;
  o[{2, 4}] = q;
  o[{2, 5}] = arow(1);
  o[{3, 4}] = -p + arow(5);
  o[{3, 5}] = -arow(4);
  o[{4, 5}] = arow(3);
  auto omega = [&](int i, int j) -> Form<K> {
    if (i == j) return Form<K>(5, 1);
    if (i < j) return o[{i, j}];
    return -o[{j, i}];
  };
  LieAlgebra<K> g;
  g.dim = 5;
  for (int i = 1; i <= 5; ++i) {
    Form<K> de(5, 2);
    for (int j = 1; j <= 5; ++j)
      de -= wedge(omega(i, j), Form<K>::generator(5, j));
    g.de.push_back(de);
  }
  return g;
}

// The 15 independent torsion entries of a closed structure in adapted
// coordinates, ordered: f^1, G[1][2], beta(e1..e4), wminus and sigma_2,
// sigma_3 on the basis {e12-e34, e13+e24, e14-e23}.
template <class K>
Vec<K> hypo_components(const Torsion<K>& t) {
  Vec<K> c;
  c.push_back(t.f_alpha[0]);
  c.push_back(t.g[1][2]);
  for (int i = 1; i <= 4; ++i) c.push_back(t.beta.coeff({i}));
  for (const Form<K>* f : {&t.wminus, &t.sigma[1], &t.sigma[2]}) {
    c.push_back(f->coeff({1, 2}));
    c.push_back(f->coeff({1, 3}));
    c.push_back(f->coeff({1, 4}));
  }
  return c;
}

namespace detail {
inline std::vector<std::pair<int, int>> symmetric_index_pairs() {
  std::vector<std::pair<int, int>> p;
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j) p.emplace_back(i, j);
  return p;
}
}  // namespace detail

// 15x15 matrix taking the symmetric entries of A to the torsion components.
inline const Mat<Rational>& shape_component_matrix() {
  static const Mat<Rational> m = [] {
    auto model = reference_structure<Rational>();
    auto pairs = detail::symmetric_index_pairs();
    Mat<Rational> cols = zeros<Rational>(15, 15);
    Form<Rational> zero1(5, 1);
    for (std::size_t c = 0; c < pairs.size(); ++c) {
      Mat<Rational> A = zeros<Rational>(5, 5);
      A[pairs[c].first][pairs[c].second] = 1;
      A[pairs[c].second][pairs[c].first] = 1;
      auto g = connection_differentials(A, zero1, zero1, zero1);
      Vec<Rational> comp = hypo_components(torsion(g, model));
      for (int r = 0; r < 15; ++r) cols[r][c] = comp[r];
    }
    return cols;
  }();
  return m;
}

// Recover the symmetric matrix from 15 torsion components of a closed
// structure in adapted coordinates.
template <class K>
Mat<K> shape_from_components(const Vec<K>& comp) {
  const Mat<Rational>& mq = shape_component_matrix();
  Mat<K> m = zeros<K>(15, 15);
  for (int i = 0; i < 15; ++i)
    for (int j = 0; j < 15; ++j) {
      if constexpr (scalar_traits<K>::exact)
        m[i][j] = mq[i][j];
      else
        m[i][j] = to_double(mq[i][j]);
    }
  auto a = solve(m, comp);
  if (!a) throw MathError("torsion components outside the closed-structure range");
  auto pairs = detail::symmetric_index_pairs();
  Mat<K> A = zeros<K>(5, 5);
  for (std::size_t c = 0; c < pairs.size(); ++c) {
    A[pairs[c].first][pairs[c].second] = (*a)[c];
    A[pairs[c].second][pairs[c].first] = (*a)[c];
  }
  return A;
}

// Shape operator in the adapted coframe of a closed structure.
template <class K>
Mat<K> shape_operator(const LieAlgebra<K>& g, const SU2Structure<K>& s) {
  if (!is_hypo(g, s)) throw MathError("structure is not closed");
  Mat<K> b = adapted_coframe(s);
  auto binv = inverse(b);
  if (!binv) throw MathError("adapted coframe is singular");
  LieAlgebra<K> gb = change_coframe(g, b, *binv);
  Torsion<K> t = torsion(gb, reference_structure<K>());
  return shape_from_components(hypo_components(t));
}

}  // namespace hypo
