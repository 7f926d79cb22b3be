#pragma once
// Polar linear system of a hypo frame on the product cylinder.  At a point
// of the frame bundle over M x R the torsion-free condition on a transverse
// vector v gives eight blocks of linear equations in the 36 connection
// values sigma^i_j(v).  The coefficient rows are frame-independent of rank
// 22; the right-hand sides come from d(eta^i) of the adapted coframe, and
// their compatibility is equivalent to the frame being hypo.  The kernel is
// gl(6)_5 (matrices supported on the last column) plus su(3).

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <vector>

#include <hypo/curvature.hpp>
#include <hypo/su2.hpp>

namespace hypo {

// d(eta^i)(e_a, e_b) for the leaf frame; the cylinder direction is closed
template <class K> struct TautTable {
  std::vector<Form<K>> de;
  K operator()(int i, int a, int b) const {
    if (i == 6) return K(0);
    return detail::frame_coeff(de[i - 1], a, b);
  }
};

template <class K> TautTable<K> taut_derivatives(const FrameData<K>& f) {
  if (f.dim() != 5) throw MathError("polar system needs a 5-dimensional frame");
  if (!f.gram.empty())
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        if (!scalar_traits<K>::negligible(f.gram[i][j] - K(i == j ? 1 : 0)))
          throw MathError("coframe is not orthonormal");
  return {f.de};
}

// frame data of the adapted coframe of (g, s), exact when K allows it
template <class K>
FrameData<K> structure_frame(const LieAlgebra<K>& g, const SU2Structure<K>& s) {
  Mat<K> b = adapted_coframe(s);
  auto binv = inverse(b);
  if (!binv) throw MathError("adapted coframe is singular");
  return static_frame(change_coframe(g, b, *binv));
}

inline constexpr int sigma_index(int upper, int lower) {
  return (upper - 1) * 6 + (lower - 1);
}

namespace detail {

struct SigmaTerm { int i, j, c; };      // c * sigma^i_j(v)
struct DerivTerm { int i, a, b, c; };   // c * d(eta^i)(e_a, e_b)
struct PolarEquation {
  int block;
  std::vector<SigmaTerm> lhs;
  std::vector<DerivTerm> rhs;
};

inline const std::vector<PolarEquation>& polar_equations() {
  static const std::vector<PolarEquation> eqs = {
      {1, {{1, 1, 1}, {2, 2, 1}}, {{5, 1, 2, 1}}},
      {1, {{3, 3, 1}, {4, 4, 1}}, {{5, 3, 4, 1}}},
      {1, {{2, 2, 1}, {4, 4, 1}, {5, 5, 1}}, {{1, 2, 5, 1}, {3, 4, 5, 1}}},
      {1, {{1, 1, 1}, {4, 4, 1}, {5, 5, 1}}, {{2, 1, 5, -1}, {3, 4, 5, 1}}},
      {1, {{2, 2, 1}, {3, 3, 1}, {5, 5, 1}}, {{1, 2, 5, 1}, {4, 3, 5, -1}}},
      {1, {{1, 1, 1}, {3, 3, 1}, {5, 5, 1}}, {{2, 1, 5, -1}, {4, 3, 5, -1}}},

      {2, {{2, 1, 1}, {3, 4, -1}, {6, 5, 1}}, {{1, 1, 5, 1}, {4, 4, 5, 1}}},
      {2, {{1, 2, -1}, {4, 3, 1}, {6, 5, 1}}, {{2, 2, 5, 1}, {3, 3, 5, 1}}},
      {2, {{2, 1, 1}, {4, 3, 1}, {6, 5, 1}}, {{1, 1, 5, 1}, {3, 3, 5, 1}}},
      {2, {{1, 2, 1}, {3, 4, 1}, {6, 5, -1}}, {{2, 2, 5, -1}, {4, 4, 5, -1}}},

      {3, {{5, 1, -1}, {6, 2, 1}}, {{1, 1, 2, 1}, {4, 2, 4, -1}, {3, 1, 4, 1}}},
      {3, {{5, 1, -1}, {6, 2, 1}}, {{4, 1, 3, -1}, {1, 1, 2, 1}, {3, 3, 2, 1}}},
      {3, {{1, 5, 1}, {6, 2, 1}}, {{5, 5, 2, 1}}},

      {4, {{5, 3, -1}, {6, 4, 1}}, {{2, 1, 3, 1}, {1, 1, 4, 1}, {3, 3, 4, 1}}},
      {4, {{5, 3, -1}, {6, 4, 1}}, {{1, 3, 2, 1}, {2, 2, 4, 1}, {3, 3, 4, 1}}},
      {4, {{3, 5, 1}, {6, 4, 1}}, {{5, 5, 4, 1}}},

      {5, {{5, 2, 1}, {6, 1, 1}}, {{4, 3, 2, -1}, {2, 1, 2, -1}, {3, 1, 3, -1}}},
      {5, {{5, 2, -1}, {6, 1, -1}}, {{2, 1, 2, 1}, {4, 1, 4, 1}, {3, 2, 4, 1}}},
      {5, {{2, 5, 1}, {6, 1, -1}}, {{5, 1, 5, 1}}},

      {6, {{5, 4, -1}, {6, 3, -1}}, {{2, 3, 2, 1}, {4, 3, 4, 1}, {1, 2, 4, -1}}},
      {6, {{5, 4, 1}, {6, 3, 1}}, {{1, 1, 3, 1}, {4, 3, 4, -1}, {2, 1, 4, -1}}},
      {6, {{4, 5, 1}, {6, 3, -1}}, {{5, 3, 5, 1}}},

      {7, {{2, 3, -1}, {4, 1, 1}}, {{5, 1, 3, -1}}},
      {7, {{1, 4, 1}, {3, 2, -1}}, {{5, 2, 4, -1}}},
      {7, {{3, 2, -1}, {4, 1, -1}}, {{4, 2, 5, 1}, {3, 1, 5, -1}}},
      {7, {{1, 4, 1}, {2, 3, 1}}, {{1, 3, 5, 1}, {2, 4, 5, -1}}},

      {8, {{2, 4, 1}, {3, 1, 1}}, {{5, 1, 4, 1}}},
      {8, {{1, 3, 1}, {4, 2, 1}}, {{5, 2, 3, -1}}},
      {8, {{4, 2, -1}, {3, 1, 1}}, {{4, 1, 5, -1}, {3, 2, 5, -1}}},
      {8, {{1, 3, -1}, {2, 4, 1}}, {{2, 3, 5, 1}, {1, 4, 5, 1}}},
  };
  return eqs;
}

}  // namespace detail

// the six scalar identities the right-hand sides satisfy exactly when the
// frame is hypo: four from the repeated-row blocks, two from the closing
// null combinations of the last two blocks
template <class K> Vec<K> compatibility_defects(const TautTable<K>& d) {
  return {
      d(4, 1, 3) + d(4, 4, 2) + d(3, 1, 4) + d(3, 2, 3),
      d(2, 1, 3) + d(2, 4, 2) + d(1, 1, 4) + d(1, 2, 3),
      d(4, 1, 4) + d(4, 2, 3) - d(3, 1, 3) - d(3, 4, 2),
      d(2, 1, 4) + d(2, 2, 3) - d(1, 1, 3) - d(1, 4, 2),
      -d(5, 1, 3) + d(5, 2, 4) + d(4, 2, 5) - d(3, 1, 5) + d(1, 3, 5) - d(2, 4, 5),
      -d(5, 1, 4) - d(5, 2, 3) - d(4, 1, 5) - d(3, 2, 5) + d(2, 3, 5) + d(1, 4, 5),
  };
}

template <class K> struct PolarSystem {
  static constexpr int unknown_count = 36;
  Mat<K> rows;                    // 30 x 36 coefficient rows
  Vec<K> rhs;
  std::vector<int> block_labels;  // 1..8 per equation
  double compatibility_residual = 0.0;

  std::array<int, 8> block_sizes() const {
    std::array<int, 8> n{};
    for (int b : block_labels) n[b - 1]++;
    return n;
  }
};

template <class K> PolarSystem<K> build_polar_system(const FrameData<K>& f) {
  auto table = taut_derivatives(f);
  const auto& eqs = detail::polar_equations();
  PolarSystem<K> sys;
  sys.rows = zeros<K>(eqs.size(), PolarSystem<K>::unknown_count);
  sys.rhs.assign(eqs.size(), K(0));
  for (std::size_t r = 0; r < eqs.size(); ++r) {
    sys.block_labels.push_back(eqs[r].block);
    for (const auto& t : eqs[r].lhs) sys.rows[r][sigma_index(t.i, t.j)] += K(t.c);
    for (const auto& t : eqs[r].rhs) sys.rhs[r] += K(t.c) * table(t.i, t.a, t.b);
  }
  for (const K& v : compatibility_defects(table))
    sys.compatibility_residual =
        std::max(sys.compatibility_residual, std::fabs(to_double(v)));
  return sys;
}

struct PolarCertificate {
  int rank = 0;
  int extension_dim = 0;
  bool compatible = false;
  double residual = 0.0;  // sup-norm least-squares gap of the full system
};

template <class K> PolarCertificate polar_rank_certificate(const PolarSystem<K>& sys) {
  PolarCertificate cert;
  int m = int(sys.rows.size()), n = PolarSystem<K>::unknown_count;
  if constexpr (scalar_traits<K>::exact) {
    cert.rank = int(rank(sys.rows));
    Mat<K> aug = sys.rows;
    for (int r = 0; r < m; ++r) aug[r].push_back(sys.rhs[r]);
    cert.compatible = int(rank(aug)) == cert.rank;
  } else {
    Eigen::MatrixXd a(m, n + 1);
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < n; ++c) a(r, c) = to_double(sys.rows[r][c]);
      a(r, n) = to_double(sys.rhs[r]);
    }
    auto count = [](const Eigen::MatrixXd& x) {
      auto sv = x.bdcSvd().singularValues();
      int k = 0;
      for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-10) ++k;
      return k;
    };
    cert.rank = count(a.leftCols(n));
    cert.compatible = count(a) == cert.rank;
  }
  cert.extension_dim = n - cert.rank;

  Eigen::MatrixXd a(m, n);
  Eigen::VectorXd b(m);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) a(r, c) = to_double(sys.rows[r][c]);
    b(r) = to_double(sys.rhs[r]);
  }
  Eigen::VectorXd x = a.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
  cert.residual = (a * x - b).lpNorm<Eigen::Infinity>();
  return cert;
}

// matrix entries in row-major order matching sigma_index
template <class K> Vec<K> vectorize_connection(const Mat<K>& m) {
  Vec<K> v;
  v.reserve(36);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) v.push_back(m[i][j]);
  return v;
}

// gl(6)_5: matrices supported on the last column; these unknowns never
// appear on a left-hand side
template <class K> std::vector<Mat<K>> gl5_vertical_basis() {
  std::vector<Mat<K>> out;
  for (int i = 0; i < 6; ++i) {
    Mat<K> m = zeros<K>(6, 6);
    m[i][5] = K(1);
    out.push_back(m);
  }
  return out;
}

// su(3) in real form for the complex pairing (12)(34)(56): antisymmetric,
// commuting with the block rotation J, complex trace zero.  Basis: three
// real rotations between pairs, three imaginary mixers, two traceless
// diagonal generators.
template <class K> std::vector<Mat<K>> su3_vertical_basis() {
  std::vector<Mat<K>> out;
  for (int p = 0; p < 3; ++p)
    for (int q = p + 1; q < 3; ++q) {
      Mat<K> re = zeros<K>(6, 6);
      re[2 * p][2 * q] = K(1);
      re[2 * p + 1][2 * q + 1] = K(1);
      re[2 * q][2 * p] = K(-1);
      re[2 * q + 1][2 * p + 1] = K(-1);
      out.push_back(re);
      Mat<K> im = zeros<K>(6, 6);
      im[2 * p][2 * q + 1] = K(-1);
      im[2 * p + 1][2 * q] = K(1);
      im[2 * q][2 * p + 1] = K(-1);
      im[2 * q + 1][2 * p] = K(1);
      out.push_back(im);
    }
  for (int p = 0; p < 2; ++p) {
    Mat<K> d = zeros<K>(6, 6);
    d[2 * p][2 * p + 1] = K(-1);
    d[2 * p + 1][2 * p] = K(1);
    d[2 * p + 2][2 * p + 3] = K(1);
    d[2 * p + 3][2 * p + 2] = K(-1);
    out.push_back(d);
  }
  return out;
}

}  // namespace hypo
