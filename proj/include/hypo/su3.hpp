#pragma once
// SU(3)-structures on a 6-generator coframe, stored as (w, psi+, psi-)
// with psi+ + i psi- = Psi.  A 5-dimensional structure lifts by one extra
// generator e6: w = w1 + alpha^e6, Psi = (w2 + i w3)^(alpha + i e6); the
// reverse restriction contracts with the unit normal.

#include <hypo/su2.hpp>

namespace hypo {

template <class K>
struct SU3Structure {
  Form<K> omega;                 // degree 2
  Form<K> psi_plus, psi_minus;   // degree 3
  int dim() const { return omega.dim(); }
  bool operator==(const SU3Structure& o) const {
    return omega == o.omega && psi_plus == o.psi_plus && psi_minus == o.psi_minus;
  }
};

namespace detail {
// Same terms over a larger generator set.
template <class K>
Form<K> widen(const Form<K>& f, int dim) {
  Form<K> r(dim, f.degree());
  for (auto& [m, c] : f.terms()) r.add_term(m, c);
  return r;
}

// Drop the generator `gone` (no term may contain it) and renumber the
// ones above it down by one.  Relabeling is monotone, so no signs move.
template <class K>
Form<K> drop_index(const Form<K>& f, int gone) {
  Form<K> r(f.dim() - 1, f.degree());
  for (auto& [m, c] : f.terms()) {
    std::vector<int> ix;
    for (int i : mono_indices(m)) ix.push_back(i > gone ? i - 1 : i);
    r.add_term(mono_of_indices(ix), c);
  }
  return r;
}
}  // namespace detail

template <class K>
SU3Structure<K> su3_lift(const SU2Structure<K>& s) {
  int n = s.dim() + 1;
  Form<K> e6 = Form<K>::generator(n, n);
  Form<K> a = detail::widen(s.alpha, n);
  Form<K> w1 = detail::widen(s.omega1, n);
  Form<K> w2 = detail::widen(s.omega2, n);
  Form<K> w3 = detail::widen(s.omega3, n);
  return {w1 + wedge(a, e6), wedge(w2, a) - wedge(w3, e6), wedge(w3, a) + wedge(w2, e6)};
}

// Cone version: w = t^2 w1 + t alpha^e6, Psi = t^2 (w2 + i w3)^(t alpha + i e6).
// At t = 1 this is su3_lift.
template <class K>
SU3Structure<K> conical_lift(const SU2Structure<K>& s, const K& t) {
  int n = s.dim() + 1;
  Form<K> e6 = Form<K>::generator(n, n);
  Form<K> a = detail::widen(s.alpha, n);
  Form<K> w1 = detail::widen(s.omega1, n);
  Form<K> w2 = detail::widen(s.omega2, n);
  Form<K> w3 = detail::widen(s.omega3, n);
  K t2 = t * t, t3 = t2 * t;
  return {t2 * w1 + t * wedge(a, e6), t3 * wedge(w2, a) - t2 * wedge(w3, e6),
          t3 * wedge(w3, a) + t2 * wedge(w2, e6)};
}

template <class K = Rational>
SU3Structure<K> reference_su3() {
  return su3_lift(reference_structure<K>());
}

// w^psi = 0 and psi+^psi- = (2/3) w^3 with w^3 nonzero.
template <class K>
Validation validate_su3(const SU3Structure<K>& n) {
  if (n.dim() != 6) return {false, "expected a 6-dimensional structure"};
  Form<K> w3 = wedge(wedge(n.omega, n.omega), n.omega);
  double scale = std::max(1.0, sup_coeff(w3));
  if (nearly_zero(w3, scale)) return {false, "w^3 = 0"};
  if (!nearly_zero(wedge(n.omega, n.psi_plus), scale)) return {false, "w ^ psi+ != 0"};
  if (!nearly_zero(wedge(n.omega, n.psi_minus), scale)) return {false, "w ^ psi- != 0"};
  if (!nearly_equal(K(3) * wedge(n.psi_plus, n.psi_minus), K(2) * w3))
    return {false, "psi+ ^ psi- differs from (2/3) w^3"};
  return {true, ""};
}

template <class K>
SU3Structure<K> pullback(const SU3Structure<K>& n, const Mat<K>& rows) {
  return {n.omega.substitute(rows), n.psi_plus.substitute(rows),
          n.psi_minus.substitute(rows)};
}

// Restriction along the coframe direction `normal` (contraction with the
// dual vector V): alpha = -V -| w, w2 = V -| psi-, w3 = -V -| psi+, and w1
// keeps the terms of w away from the normal.  Inverts su3_lift for normal = 6.
template <class K>
SU2Structure<K> su2_restrict(const SU3Structure<K>& n, int normal) {
  Form<K> a = -n.omega.interior(normal);
  Form<K> w2 = n.psi_minus.interior(normal);
  Form<K> w3 = -n.psi_plus.interior(normal);
  Form<K> w1(n.dim(), 2);
  for (auto& [m, c] : n.omega.terms())
    if (!(m & (Monomial(1) << (normal - 1)))) w1.add_term(m, c);
  return {detail::drop_index(a, normal), detail::drop_index(w1, normal),
          detail::drop_index(w2, normal), detail::drop_index(w3, normal)};
}

}  // namespace hypo
