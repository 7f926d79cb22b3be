#pragma once
// Dense linear algebra over the scalar template. Sizes here are tiny
// (nothing above ~40 columns), so plain Gaussian elimination is fine.
// Exact mode pivots on any nonzero entry; floating mode does partial
// pivoting with a relative negligibility cutoff.

#include <cassert>
#include <cstddef>
#include <optional>
#include <vector>

#include "hypo/rational.hpp"

namespace hypo {

template <class K> using Vec = std::vector<K>;
template <class K> using Mat = std::vector<std::vector<K>>;

template <class K> Mat<K> zeros(std::size_t r, std::size_t c) {
  return Mat<K>(r, Vec<K>(c, K(0)));
}

template <class K> Mat<K> identity(std::size_t n) {
  Mat<K> m = zeros<K>(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = K(1);
  return m;
}

template <class K> Mat<K> transpose(const Mat<K>& a) {
  if (a.empty()) return {};
  Mat<K> t = zeros<K>(a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

template <class K> Mat<K> matmul(const Mat<K>& a, const Mat<K>& b) {
  assert(!a.empty() && !b.empty() && a[0].size() == b.size());
  Mat<K> c = zeros<K>(a.size(), b[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (scalar_traits<K>::is_zero(a[i][k])) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

template <class K> Vec<K> matvec(const Mat<K>& a, const Vec<K>& x) {
  assert(a.empty() || a[0].size() == x.size());
  Vec<K> y(a.size(), K(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

// Reduced row echelon form in place; returns pivot column per pivot row.
template <class K> std::vector<std::size_t> rref(Mat<K>& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  std::size_t rows = a.size(), cols = a[0].size(), r = 0;
  double scale = 1.0;
  if constexpr (!scalar_traits<K>::exact) {
    for (auto& row : a)
      for (auto& x : row) scale = std::max(scale, scalar_traits<K>::abs_value(x));
  }
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = r;
    double besta = scalar_traits<K>::abs_value(a[r][c]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      double v = scalar_traits<K>::abs_value(a[i][c]);
      if (v > besta) { besta = v; best = i; }
    }
    if (scalar_traits<K>::negligible(a[best][c], scale)) continue;
    std::swap(a[r], a[best]);
    K inv = K(1) / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || scalar_traits<K>::is_zero(a[i][c])) continue;
      K f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class K> std::size_t rank(Mat<K> a) { return rref(a).size(); }

// Basis of the right kernel, one vector per free column.
template <class K> std::vector<Vec<K>> kernel(Mat<K> a) {
  if (a.empty()) return {};
  std::size_t cols = a[0].size();
  auto piv = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<Vec<K>> basis;
  for (std::size_t fc = 0; fc < cols; ++fc) {
    if (is_pivot[fc]) continue;
    Vec<K> v(cols, K(0));
    v[fc] = K(1);
    for (std::size_t pr = 0; pr < piv.size(); ++pr) v[piv[pr]] = -a[pr][fc];
    basis.push_back(std::move(v));
  }
  return basis;
}

// One solution of A x = b, or nullopt when inconsistent.
template <class K> std::optional<Vec<K>> solve(Mat<K> a, Vec<K> b) {
  assert(a.size() == b.size());
  std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
  auto piv = rref(a);
  if (!piv.empty() && piv.back() == cols) return std::nullopt;
  Vec<K> x(cols, K(0));
  for (std::size_t pr = 0; pr < piv.size(); ++pr) x[piv[pr]] = a[pr][cols];
  return x;
}

template <class K> K det(Mat<K> a) {
  assert(a.size() == (a.empty() ? 0 : a[0].size()));
  std::size_t n = a.size();
  K d(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = c;
    double besta = scalar_traits<K>::abs_value(a[c][c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      double v = scalar_traits<K>::abs_value(a[i][c]);
      if (v > besta) { besta = v; best = i; }
    }
    if (scalar_traits<K>::is_zero(a[best][c])) return K(0);
    if (best != c) { std::swap(a[c], a[best]); d = -d; }
    d *= a[c][c];
    K inv = K(1) / a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      K f = a[i][c] * inv;
      if (scalar_traits<K>::is_zero(f)) continue;
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return d;
}

template <class K> std::optional<Mat<K>> inverse(const Mat<K>& a) {
  std::size_t n = a.size();
  Mat<K> aug = a;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i].push_back(i == j ? K(1) : K(0));
  }
  auto piv = rref(aug);
  if (piv.size() != n) return std::nullopt;
  Mat<K> inv = zeros<K>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

template <class K> Mat<K> to_numeric_mat(const Mat<Rational>& a) {
  Mat<double> m = zeros<double>(a.size(), a.empty() ? 0 : a[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) m[i][j] = to_double(a[i][j]);
  return m;
}

}  // namespace hypo
