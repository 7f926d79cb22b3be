#pragma once
// Circle action on a paired orthonormal 6-coframe and the pencil of closed
// simple 3-forms it sweeps out on a lifted cylinder.  The rotation turns
// the planes (E3,E5), (E2,E4), (E1,E6) simultaneously, fixing the Kaehler
// form and multiplying the holomorphic 3-form by the cube of the phase.
// Rotating E326 stays inside a 4-dimensional span of closed forms, so every
// rotated annihilator plane is special Lagrangian, with a calibration phase
// that realigns every third of a turn.  The companion metric needs the
// (E2,E4) plane turned the other way; conjugating by the 2-4 swap does that
// while keeping the same pivot forms E326 and E541.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

#include <hypo/curvature.hpp>

namespace hypo {

struct CircleElement {
  double theta = 0.0;
};

inline Mat<double> rotation_matrix(CircleElement u) {
  double c = std::cos(u.theta), s = std::sin(u.theta);
  Mat<double> r = zeros<double>(6, 6);
  const int plane[3][2] = {{3, 5}, {2, 4}, {1, 6}};
  for (auto& p : plane) {
    int a = p[0] - 1, b = p[1] - 1;
    r[a][a] = c;
    r[a][b] = -s;
    r[b][a] = s;
    r[b][b] = c;
  }
  return r;
}

inline Mat<double> swap_24_matrix() {
  Mat<double> s = identity<double>(6);
  std::swap(s[1], s[3]);
  return s;
}

inline Mat<double> swapped_rotation_matrix(CircleElement u) {
  auto s = swap_24_matrix();
  return matmul(s, matmul(rotation_matrix(u), s));
}

inline std::vector<Form<double>> rotate_coframe(CircleElement u,
                                                const std::vector<Form<double>>& coframe) {
  if (coframe.size() != 6) throw MathError("rotation needs a 6-dimensional coframe");
  auto r = rotation_matrix(u);
  std::vector<Form<double>> out;
  for (int i = 0; i < 6; ++i) {
    Form<double> f(coframe[0].dim(), 1);
    for (int j = 0; j < 6; ++j) f += r[i][j] * coframe[j];
    out.push_back(f);
  }
  return out;
}

inline Form<double> rotate_form(CircleElement u, const Form<double>& a) {
  if (a.dim() != 6) throw MathError("rotation acts on 6-dimensional forms");
  return a.substitute(rotation_matrix(u));
}

inline Form<double> base_326() { return to_numeric(parse_form("326", 6, 3)); }
inline Form<double> base_541() { return to_numeric(parse_form("541", 6, 3)); }
inline Form<double> pencil_alpha() { return to_numeric(parse_form("-321+346+526", 6, 3)); }
inline Form<double> pencil_beta() { return to_numeric(parse_form("-341-521+546", 6, 3)); }
inline Form<double> kaehler_form() { return to_numeric(parse_form("35+24+16", 6, 2)); }
inline Form<double> swapped_kaehler_form() { return to_numeric(parse_form("35-24+16", 6, 2)); }

// (re, im) of the wedge of three complex 1-forms
inline std::pair<Form<double>, Form<double>> complex_triple_wedge(
    const std::array<std::pair<Form<double>, Form<double>>, 3>& f) {
  auto [r1, m1] = f[0];
  auto [r2, m2] = f[1];
  Form<double> re2 = wedge(r1, r2) - wedge(m1, m2);
  Form<double> im2 = wedge(r1, m2) + wedge(m1, r2);
  return {wedge(re2, f[2].first) - wedge(im2, f[2].second),
          wedge(re2, f[2].second) + wedge(im2, f[2].first)};
}

// (E3 + iE5)^(E2 + iE4)^(E1 + iE6)
inline std::pair<Form<double>, Form<double>> holomorphic_3form() {
  auto g = [](int i) { return Form<double>::generator(6, i); };
  return complex_triple_wedge({{{g(3), g(5)}, {g(2), g(4)}, {g(1), g(6)}}});
}

// -(E3 + iE5)^(E2 - iE4)^(E1 + iE6), paired with the swapped rotation
inline std::pair<Form<double>, Form<double>> swapped_holomorphic_3form() {
  auto g = [](int i) { return Form<double>::generator(6, i); };
  auto [re, im] = complex_triple_wedge({{{g(3), g(5)}, {g(2), -g(4)}, {g(1), g(6)}}});
  return {-re, -im};
}

// the rotated pivot form never leaves the span of these four
inline std::vector<Form<double>> orbit_basis(bool swap_pair = false) {
  auto [re, im] = swap_pair ? swapped_holomorphic_3form() : holomorphic_3form();
  return {base_326(), re, im, base_541()};
}

// sup-norm gap of the least-squares decomposition of f in span(basis)
inline double span_residual(const Form<double>& f, const std::vector<Form<double>>& basis) {
  std::map<Monomial, int> cols;
  auto index = [&](const Form<double>& a) {
    for (auto& [m, c] : a.terms())
      if (cols.find(m) == cols.end()) cols.emplace(m, int(cols.size()));
  };
  index(f);
  for (auto& b : basis) index(b);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(cols.size(), basis.size());
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(cols.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (auto& [m, c] : basis[j].terms()) a(cols[m], j) = c;
  for (auto& [m, c] : f.terms()) rhs(cols[m]) = c;
  Eigen::VectorXd x = a.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
  return (a * x - rhs).lpNorm<Eigen::Infinity>();
}

// twelve equispaced angles plus one that is irrational against them
inline Vec<double> default_theta_samples() {
  Vec<double> v;
  for (int k = 0; k < 12; ++k) v.push_back(k * std::numbers::pi / 6.0);
  v.push_back(std::numbers::pi / 7.0);
  return v;
}

struct PencilRow {
  double theta = 0.0;
  double closedness = 0.0;     // sup coefficient of d of the rotated 3-form
  double span_residual = 0.0;  // gap to the 4-dimensional orbit span
};

// sweep the rotated pivot 3-form over theta on a 6-dimensional cylinder
// frame; closedness uses d of the frame, the span check the constant
// coefficient orbit basis
inline std::vector<PencilRow> pencil_closedness(const FrameData<double>& fd,
                                                const Vec<double>& thetas,
                                                bool swap_pair = false) {
  if (fd.dim() != 6) throw MathError("pencil needs a 6-dimensional cylinder frame");
  LieAlgebra<double> cyl{6, fd.de};
  auto basis = orbit_basis(swap_pair);
  std::vector<PencilRow> rows;
  for (double th : thetas) {
    auto r = swap_pair ? swapped_rotation_matrix({th}) : rotation_matrix({th});
    auto uf = base_326().substitute(r);
    rows.push_back({th, sup_coeff(cyl.d(uf)), span_residual(uf, basis)});
  }
  return rows;
}

// the rotated annihilator plane is calibrated with phase matching the cube
// of the rotation: (u . E326) ^ Im[e^{3 i theta} Psi] = 0
inline double slag_phase_residual(CircleElement u, bool swap_pair = false) {
  auto [re, im] = swap_pair ? swapped_holomorphic_3form() : holomorphic_3form();
  Form<double> phase_im = std::sin(3 * u.theta) * re + std::cos(3 * u.theta) * im;
  auto r = swap_pair ? swapped_rotation_matrix(u) : rotation_matrix(u);
  return sup_coeff(wedge(base_326().substitute(r), phase_im));
}

inline bool slag_phase_check(CircleElement u, bool swap_pair = false) {
  return slag_phase_residual(u, swap_pair) <= 1e-12;
}

// 3-dimensional space of vectors annihilating a simple 3-form, rows of the
// returned matrix orthonormal; simplicity is certified by the kernel
// dimension of the contraction map
inline Mat<double> annihilator_subspace(const Form<double>& gamma) {
  if (gamma.dim() != 6 || gamma.degree() != 3)
    throw MathError("annihilator expects a 3-form on six generators");
  std::map<Monomial, int> cols;
  std::vector<Form<double>> contractions;
  for (int k = 1; k <= 6; ++k) {
    contractions.push_back(gamma.interior(k));
    for (auto& [m, c] : contractions.back().terms())
      if (cols.find(m) == cols.end()) cols.emplace(m, int(cols.size()));
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(std::max<std::size_t>(cols.size(), 1), 6);
  for (int k = 0; k < 6; ++k)
    for (auto& [m, c] : contractions[k].terms()) a(cols[m], k) = c;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  auto sv = svd.singularValues();
  double scale = sv.size() ? std::max(1.0, sv(0)) : 1.0;
  int null_dim = 6 - int(sv.size());
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) <= 1e-10 * scale) ++null_dim;
  if (null_dim != 3) throw MathError("3-form is not simple");
  Mat<double> out = zeros<double>(3, 6);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 6; ++c) out[r][c] = svd.matrixV()(c, 3 + r);
  return out;
}

}  // namespace hypo
