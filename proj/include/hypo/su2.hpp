#pragma once
// SU(2)-structures on 5-dimensional algebras: a 1-form alpha and a triple
// of 2-forms (w1, w2, w3) with w_i ^ w_j = delta_ij v, v ^ alpha != 0, and
// compatible orientation. The model is alpha=e5, w1=e12+e34, w2=e13+e42,
// w3=e14+e23; every valid structure is a pullback of the model.

#include <optional>
#include <string>
#include <type_traits>

#include "hypo/lie_algebra.hpp"

namespace hypo {

template <class K>
struct SU2Structure {
  Form<K> alpha;
  Form<K> omega1, omega2, omega3;

  int dim() const { return alpha.dim(); }
  bool operator==(const SU2Structure& o) const {
    return alpha == o.alpha && omega1 == o.omega1 && omega2 == o.omega2 &&
           omega3 == o.omega3;
  }
  SU2Structure<double> to_numeric() const {
    return {alpha.template convert<double>(), omega1.template convert<double>(),
            omega2.template convert<double>(), omega3.template convert<double>()};
  }
};

template <class K = Rational>
SU2Structure<K> reference_structure() {
  SU2Structure<Rational> q{parse_form("5", 5, 1), parse_form("12+34", 5),
                           parse_form("13+42", 5), parse_form("14+23", 5)};
  if constexpr (std::is_same_v<K, Rational>)
    return q;
  else
    return q.to_numeric();
}

template <class K>
Form<K> upsilon(const SU2Structure<K>& s) {
  return wedge(s.omega1, s.omega1);
}

// Pullback along the coframe change e^i -> rows[i-1].
template <class K>
SU2Structure<K> pullback(const SU2Structure<K>& s, const Mat<K>& rows) {
  return {s.alpha.substitute(rows), s.omega1.substitute(rows),
          s.omega2.substitute(rows), s.omega3.substitute(rows)};
}

template <class K>
SU2Structure<K> parse_su2(int dim, const std::string& alpha, const std::string& w1,
                          const std::string& w2, const std::string& w3) {
  static_assert(scalar_traits<K>::exact);
  return {parse_form(alpha, dim, 1), parse_form(w1, dim, 2), parse_form(w2, dim, 2),
          parse_form(w3, dim, 2)};
}

// Rotate (w2, w3) by the circle point (c, s), c^2 + s^2 = 1.  The caller
// supplies the pair so that rational points stay exact.
template <class K>
SU2Structure<K> rotate_pair(const SU2Structure<K>& st, const K& c, const K& s) {
  if (!scalar_traits<K>::negligible(c * c + s * s - K(1)))
    throw MathError("(c, s) is not on the unit circle");
  return {st.alpha, st.omega1, c * st.omega2 - s * st.omega3,
          s * st.omega2 + c * st.omega3};
}

// Wedge identities of the complex form Phi = w2 + i w3: Phi ^ Phi = 0,
// w1 ^ Phi = 0 and Phi ^ conj(Phi) = 2 w1^2.  Equivalent to the pairwise
// wedge relations but blind to orientation and to alpha.
template <class K>
bool phi_wedge_conditions(const SU2Structure<K>& s) {
  Form<K> v = upsilon(s);
  Form<K> w22 = wedge(s.omega2, s.omega2);
  Form<K> w33 = wedge(s.omega3, s.omega3);
  double scale = std::max(1.0, sup_coeff(v));
  return nearly_zero(w22 - w33, scale) && nearly_zero(wedge(s.omega2, s.omega3), scale) &&
         nearly_zero(wedge(s.omega1, s.omega2), scale) &&
         nearly_zero(wedge(s.omega1, s.omega3), scale) && nearly_equal(w22 + w33, v + v);
}

namespace detail {
// Matrix W[i][j] = w(e_i, e_j), so that (Y -| w)_j = sum_i Y_i W[i][j].
template <class K>
Mat<K> gram_of_two_form(const Form<K>& w) {
  int n = w.dim();
  Mat<K> m = zeros<K>(n, n);
  for (auto& [mono, c] : w.terms()) {
    auto ix = mono_indices(mono);
    m[ix[0] - 1][ix[1] - 1] = c;
    m[ix[1] - 1][ix[0] - 1] = -c;
  }
  return m;
}

template <class K>
Vec<K> one_form_coeffs(const Form<K>& a) {
  Vec<K> v(a.dim(), K(0));
  for (auto& [mono, c] : a.terms()) v[mono_indices(mono)[0] - 1] = c;
  return v;
}
}  // namespace detail

struct Validation {
  bool ok = true;
  std::string reason;
};

// Vector field dual to alpha: spans the kernel of v, normalized alpha = 1.
template <class K>
Vec<K> reeb_vector(const SU2Structure<K>& s) {
  Form<K> v = upsilon(s);
  auto ker = annihilator(v);
  if (ker.size() != 1) throw MathError("volume 4-form is degenerate");
  Vec<K> xi = ker[0];
  K pairing = s.alpha.interior(xi).coeff({});
  if (scalar_traits<K>::is_zero(pairing))
    throw MathError("alpha vanishes on the kernel direction");
  K inv = K(1) / pairing;
  for (auto& c : xi) c *= inv;
  return xi;
}

template <class K>
Validation validate(const SU2Structure<K>& s) {
  if (s.dim() != 5) return {false, "expected a 5-dimensional structure"};
  Form<K> v = upsilon(s);
  double scale = std::max(1.0, sup_coeff(v));
  if (nearly_zero(v, scale)) return {false, "w1 ^ w1 = 0"};
  auto off = [&](const Form<K>& a, const Form<K>& b) {
    return nearly_zero(wedge(a, b), scale);
  };
  if (!nearly_equal(wedge(s.omega2, s.omega2), v))
    return {false, "w2 ^ w2 differs from w1 ^ w1"};
  if (!nearly_equal(wedge(s.omega3, s.omega3), v))
    return {false, "w3 ^ w3 differs from w1 ^ w1"};
  if (!off(s.omega1, s.omega2)) return {false, "w1 ^ w2 nonzero"};
  if (!off(s.omega1, s.omega3)) return {false, "w1 ^ w3 nonzero"};
  if (!off(s.omega2, s.omega3)) return {false, "w2 ^ w3 nonzero"};
  if (nearly_zero(wedge(s.alpha, v), scale)) return {false, "alpha ^ w1 ^ w1 = 0"};

  // Orientation: pick X with alpha(X)=0, X -| w1 != 0, solve Y -| w2 = X -| w1
  // with alpha(Y)=0 and demand w3(X, Y) > 0.
  Vec<K> arow = detail::one_form_coeffs(s.alpha);
  Mat<K> alpha_mat{arow};
  auto ker = kernel(alpha_mat);
  Vec<K> X;
  Form<K> target(5, 1);
  double w1scale = std::max(1.0, sup_coeff(s.omega1));
  for (auto& cand : ker) {
    Form<K> c = s.omega1.interior(cand);
    if (!nearly_zero(c, w1scale)) { X = cand; target = c; break; }
  }
  if (X.empty()) return {false, "w1 vanishes on ker alpha"};

  Mat<K> w2m = detail::gram_of_two_form(s.omega2);
  Mat<K> system = zeros<K>(6, 5);
  Vec<K> rhs(6, K(0));
  Vec<K> tgt = detail::one_form_coeffs(target);
  for (int j = 0; j < 5; ++j) {
    for (int i = 0; i < 5; ++i) system[j][i] = w2m[i][j];
    rhs[j] = tgt[j];
  }
  system[5] = arow;
  auto Y = solve(system, rhs);
  if (!Y) return {false, "orientation witness equation unsolvable"};
  K pairing = s.omega3.eval({X, *Y});
  if constexpr (scalar_traits<K>::exact) {
    if (pairing <= 0) return {false, "orientation reversed"};
  } else {
    if (to_double(pairing) <= 0) return {false, "orientation reversed"};
  }
  return {};
}

struct HypoReport {
  bool hypo = false;
  double residual_dw1 = 0, residual_daw2 = 0, residual_daw3 = 0;
};

// The three closedness conditions d w1 = 0, d(alpha ^ w2) = 0, d(alpha ^ w3) = 0.
template <class K>
HypoReport hypo_report(const LieAlgebra<K>& g, const SU2Structure<K>& s) {
  Form<K> r1 = g.d(s.omega1);
  Form<K> r2 = g.d(wedge(s.alpha, s.omega2));
  Form<K> r3 = g.d(wedge(s.alpha, s.omega3));
  HypoReport rep;
  rep.residual_dw1 = r1.norm();
  rep.residual_daw2 = r2.norm();
  rep.residual_daw3 = r3.norm();
  double scale = std::max({1.0, sup_coeff(s.omega1), sup_coeff(s.alpha)});
  rep.hypo = nearly_zero(r1, scale) && nearly_zero(r2, scale) && nearly_zero(r3, scale);
  return rep;
}

template <class K>
bool is_hypo(const LieAlgebra<K>& g, const SU2Structure<K>& s) {
  return hypo_report(g, s).hypo;
}

// ---- adapted coframe -------------------------------------------------------
//
// Returns the 5x5 matrix B whose rows b^1..b^5 satisfy
// pullback(model, B) = s; row 5 is alpha. Rational mode needs the
// normalization scalar to be a perfect square for some candidate seed and
// throws otherwise; callers that only need the torsion never require this.

namespace detail {
template <class K>
std::optional<Vec<K>> solve_partner(const SU2Structure<K>& s, const Vec<K>& x1,
                                    int which) {
  Mat<K> m1 = gram_of_two_form(s.omega1);
  Mat<K> m2 = gram_of_two_form(s.omega2);
  Mat<K> m3 = gram_of_two_form(s.omega3);
  Vec<K> r1 = matvec(transpose(m1), x1);  // j-th entry = w1(x1, e_j)
  Vec<K> r2 = matvec(transpose(m2), x1);
  Vec<K> r3 = matvec(transpose(m3), x1);
  Mat<K> system{r1, r2, r3, one_form_coeffs(s.alpha)};
  Vec<K> rhs(4, K(0));
  rhs[which - 1] = K(1);
  return solve(system, rhs);
}
}  // namespace detail

template <class K>
Mat<K> adapted_coframe(const SU2Structure<K>& s, const Vec<K>* hint = nullptr) {
  Validation v = validate(s);
  if (!v.ok) throw MathError("not an SU(2)-structure: " + v.reason);
  Vec<K> xi = reeb_vector(s);
  Vec<K> acoef = detail::one_form_coeffs(s.alpha);

  auto project = [&](Vec<K> x) {
    K a(0);
    for (int i = 0; i < 5; ++i) a += acoef[i] * x[i];
    for (int i = 0; i < 5; ++i) x[i] -= a * xi[i];
    return x;
  };

  std::vector<Vec<K>> candidates;
  if (hint) candidates.push_back(project(*hint));
  for (int i = 0; i < 5; ++i) {
    Vec<K> e(5, K(0));
    e[i] = K(1);
    candidates.push_back(project(e));
  }
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      for (int sg : {1, -1}) {
        Vec<K> e(5, K(0));
        e[i] = K(1);
        e[j] = K(sg);
        candidates.push_back(project(e));
      }

  auto eval2 = [&](const Form<K>& w, const Vec<K>& a, const Vec<K>& b) {
    return w.eval({a, b});
  };

  for (auto& x1 : candidates) {
    if (nearly_zero(s.omega1.interior(x1), std::max(1.0, sup_coeff(s.omega1)))) continue;
    auto w2 = detail::solve_partner(s, x1, 1);
    auto w3 = detail::solve_partner(s, x1, 2);
    auto w4 = detail::solve_partner(s, x1, 3);
    if (!w2 || !w3 || !w4) continue;
    K c3 = eval2(s.omega1, *w2, *w3);
    K c4 = eval2(s.omega1, *w2, *w4);
    K c2 = -eval2(s.omega2, *w2, *w3);
    Vec<K> x2 = *w2, x3 = *w3, x4 = *w4;
    for (int i = 0; i < 5; ++i) {
      x2[i] += c2 * x1[i];
      x3[i] += c3 * x1[i];
      x4[i] += c4 * x1[i];
    }
    K k = eval2(s.omega3, x2, x3);
    K d1 = eval2(s.omega1, x3, x4) - k;
    K d2 = eval2(s.omega2, x4, x2) - k;
    if constexpr (scalar_traits<K>::exact) {
      // validate() passed, so the three normalizations must agree on the nose
      if (!scalar_traits<K>::is_zero(d1) || !scalar_traits<K>::is_zero(d2))
        throw MathError("inconsistent frame normalization");
    } else {
      double tol = 1e-8 * std::max(1.0, scalar_traits<K>::abs_value(k));
      if (scalar_traits<K>::abs_value(d1) > tol || scalar_traits<K>::abs_value(d2) > tol)
        continue;  // ill-conditioned seed, roundoff dominated
    }
    bool positive = scalar_traits<K>::exact ? (k > 0) : (to_double(k) > 1e-12);
    if (!positive) continue;

    K root;
    if constexpr (scalar_traits<K>::exact) {
      auto r = exact_sqrt(Rational(k));
      if (!r) continue;  // this seed needs an irrational rescale; try the next
      root = K(*r);
    } else {
      root = K(std::sqrt(to_double(k)));
    }
    Mat<K> frame = zeros<K>(5, 5);  // columns E_1..E_4, xi
    for (int i = 0; i < 5; ++i) {
      frame[i][0] = root * x1[i];
      frame[i][1] = x2[i] / root;
      frame[i][2] = x3[i] / root;
      frame[i][3] = x4[i] / root;
      frame[i][4] = xi[i];
    }
    auto b = inverse(frame);
    if (!b) throw MathError("frame matrix is singular");
    return *b;
  }
  throw MathError("no adapted coframe found over the exact field");
}

}  // namespace hypo
