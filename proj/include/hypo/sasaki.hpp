#pragma once
// Contact and Sasaki-type criteria for a hypo structure, phrased on its
// shape operator A in the adapted coframe, where the metric is the
// identity, alpha = e5 and J is the complex structure of the model
// (J e1 = e2, J e3 = e4, J xi = 0, determined by X -| w1 = (JX)-flat).

#include <hypo/torsion.hpp>

namespace hypo {

template <class K>
Mat<K> model_complex_structure() {
  Mat<K> j = zeros<K>(5, 5);
  j[1][0] = K(1);
  j[0][1] = K(-1);
  j[3][2] = K(1);
  j[2][3] = K(-1);
  return j;
}

namespace detail {
template <class K>
Mat<K> commutator_with_j(const Mat<K>& a) {
  Mat<K> j = model_complex_structure<K>();
  Mat<K> ja = matmul(j, a), aj = matmul(a, j);
  for (int i = 0; i < 5; ++i)
    for (int k = 0; k < 5; ++k) ja[i][k] -= aj[i][k];
  return ja;
}

template <class K>
Vec<K> column(const Mat<K>& m, int j) {
  Vec<K> v(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) v[i] = m[i][j];
  return v;
}
}  // namespace detail

// N(e_i, e_j) = alpha(e_i) (JA - AJ) e_j - alpha(e_j) (JA - AJ) e_i, the
// Nijenhuis tensor of the almost contact structure on frame pairs.
template <class K>
std::vector<std::vector<Vec<K>>> nijenhuis_table(const Mat<K>& a) {
  Mat<K> c = detail::commutator_with_j(a);
  std::vector<std::vector<Vec<K>>> n(5, std::vector<Vec<K>>(5, Vec<K>(5, K(0))));
  for (int j = 0; j < 5; ++j) {
    n[4][j] = detail::column(c, j);
    for (int i = 0; i < 5; ++i) n[j][4][i] = -n[4][j][i];
  }
  n[4][4] = Vec<K>(5, K(0));
  return n;
}

// Contact means d alpha = -2 w1 on the frame, i.e.
// w1(X, AY) + w1(AX, Y) = -2 w1(X, Y) for all X, Y.
template <class K>
bool contact_shape(const Mat<K>& a) {
  Mat<K> w = zeros<K>(5, 5);
  w[0][1] = K(1);
  w[1][0] = K(-1);
  w[2][3] = K(1);
  w[3][2] = K(-1);
  double scale = 1.0;
  for (auto& row : a)
    for (auto& x : row) scale = std::max(scale, scalar_traits<K>::abs_value(x));
  Mat<K> wa = matmul(w, a), aw = matmul(transpose(a), w);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if (!scalar_traits<K>::negligible(wa[i][j] + aw[i][j] + K(2) * w[i][j], scale))
        return false;
  return true;
}

template <class K>
bool commutes_with_j(const Mat<K>& a) {
  double scale = 1.0;
  for (auto& row : a)
    for (auto& x : row) scale = std::max(scale, scalar_traits<K>::abs_value(x));
  for (auto& row : detail::commutator_with_j(a))
    for (auto& x : row)
      if (!scalar_traits<K>::negligible(x, scale)) return false;
  return true;
}

template <class K>
struct SasakiReport {
  bool contact = false;
  bool quasi_sasakian = false;   // A commutes with J (d w1 = 0 holds on hypo input)
  bool sasaki_candidate = false; // A = -id + a alpha (x) xi
  K scalar_a = K(0);
};

template <class K>
SasakiReport<K> classify_shape(const Mat<K>& a) {
  SasakiReport<K> r;
  r.contact = contact_shape(a);
  r.quasi_sasakian = commutes_with_j(a);
  double scale = 1.0;
  for (auto& row : a)
    for (auto& x : row) scale = std::max(scale, scalar_traits<K>::abs_value(x));
  r.sasaki_candidate = true;
  for (int i = 0; i < 5 && r.sasaki_candidate; ++i)
    for (int j = 0; j < 5; ++j) {
      if (i == 4 && j == 4) continue;
      K want = (i == j) ? K(-1) : K(0);
      if (!scalar_traits<K>::negligible(a[i][j] - want, scale)) {
        r.sasaki_candidate = false;
        break;
      }
    }
  if (r.sasaki_candidate) r.scalar_a = a[4][4] + K(1);
  return r;
}

// Full pipeline for an invariant structure: requires hypo, recovers the
// shape operator, classifies it.
template <class K>
SasakiReport<K> sasaki_classify(const LieAlgebra<K>& g, const SU2Structure<K>& s) {
  return classify_shape(shape_operator(g, s));
}

}  // namespace hypo
