#pragma once
// Lie algebras presented by their Chevalley-Eilenberg structure equations
// de^k = sum c^k_{ij} e^{ij}, i.e. the dual picture of the bracket.

#include <string>
#include <vector>

#include "hypo/form.hpp"

namespace hypo {

template <class K>
struct LieAlgebra {
  int dim = 0;
  std::vector<Form<K>> de;  // de[k-1] = d of the k-th generator, a 2-form

  Form<K> d(const Form<K>& f) const {
    assert(f.dim() == dim);
    Form<K> r(dim, f.degree() + 1);
    if (f.degree() + 1 > dim) return r;
    for (auto& [m, c] : f.terms())
      for (int k : mono_indices(m)) {
        // Pull e^k out of the monomial and replace it by de^k; 2-forms are
        // central in the exterior algebra so the wedge can go on the right.
        K s = interior_sign(m, k) < 0 ? K(-c) : c;
        Form<K> rest(dim, mono_degree(m) - 1);
        rest.add_term(Monomial(m & ~(Monomial(1) << (k - 1))), s);
        r += wedge(rest, de[k - 1]);
      }
    return r;
  }

  // c^k_{ij} for i<j, sign-adjusted for i>j; bracket is [e_i,e_j] = -sum_k c^k_{ij} e_k.
  K structure_constant(int k, int i, int j) const {
    std::vector<Vec<K>> xs(2, Vec<K>(dim, K(0)));
    xs[0][i - 1] = K(1);
    xs[1][j - 1] = K(1);
    return de[k - 1].eval(xs);
  }

  Vec<K> bracket(const Vec<K>& x, const Vec<K>& y) const {
    Vec<K> z(dim, K(0));
    for (int k = 1; k <= dim; ++k) z[k - 1] = -de[k - 1].eval({x, y});
    return z;
  }

  bool satisfies_jacobi(std::string* witness = nullptr) const {
    for (int k = 1; k <= dim; ++k) {
      Form<K> dd = d(de[k - 1]);
      if (!dd.is_zero()) {
        if (witness)
          *witness = "d^2 e^" + std::to_string(k) + " = " + print_form(dd);
        return false;
      }
    }
    return true;
  }

  LieAlgebra<double> to_numeric() const {
    LieAlgebra<double> n;
    n.dim = dim;
    for (auto& f : de) n.de.push_back(f.template convert<double>());
    return n;
  }
};

// "(0,0,0,12,13+24)" with one entry per generator, each a 2-form expression.
inline LieAlgebra<Rational> parse_salamon(const std::string& raw) {
  std::string s;
  for (char ch : raw)
    if (!std::isspace((unsigned char)ch)) s += ch;
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw ParseError("structure equations must be parenthesized: '" + raw + "'");
  s = s.substr(1, s.size() - 2);

  std::vector<std::string> entries;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') { entries.push_back(cur); cur.clear(); }
    else cur += ch;
  }
  entries.push_back(cur);
  int dim = (int)entries.size();
  if (dim < 1 || dim > 9)
    throw ParseError("dimension " + std::to_string(dim) + " out of range");

  LieAlgebra<Rational> g;
  g.dim = dim;
  for (auto& e : entries) g.de.push_back(parse_form(e, dim, 2));
  return g;
}

// Structure equations rewritten in the coframe b^i = sum_j rows[i][j] e^j;
// rows_inv must be the inverse of rows.
template <class K>
LieAlgebra<K> change_coframe(const LieAlgebra<K>& g, const Mat<K>& rows,
                             const Mat<K>& rows_inv) {
  LieAlgebra<K> out;
  out.dim = g.dim;
  for (int i = 0; i < g.dim; ++i) {
    Form<K> db(g.dim, 2);
    for (int j = 0; j < g.dim; ++j) {
      if (scalar_traits<K>::is_zero(rows[i][j])) continue;
      db += rows[i][j] * g.de[j];
    }
    out.de.push_back(db.substitute(rows_inv));
  }
  return out;
}

// Matrix of d : Lambda^p -> Lambda^{p+1} in the monomial bases.
template <class K>
Mat<K> d_matrix(const LieAlgebra<K>& g, int p) {
  std::vector<Monomial> dom, cod;
  for (Monomial m = 0; m < (Monomial(1) << g.dim); ++m) {
    if (mono_degree(m) == p) dom.push_back(m);
    if (mono_degree(m) == p + 1) cod.push_back(m);
  }
  std::map<Monomial, std::size_t> row;
  for (std::size_t r = 0; r < cod.size(); ++r) row[cod[r]] = r;
  Mat<K> a = zeros<K>(cod.size(), dom.size());
  for (std::size_t c = 0; c < dom.size(); ++c) {
    Form<K> basis(g.dim, p);
    basis.add_term(dom[c], K(1));
    Form<K> image = g.d(basis);
    for (auto& [m, v] : image.terms()) a[row[m]][c] = v;
  }
  return a;
}

template <class K>
int betti2(const LieAlgebra<K>& g) {
  int two_forms = g.dim * (g.dim - 1) / 2;
  return (two_forms - rank(d_matrix(g, 2))) - rank(d_matrix(g, 1));
}

// Length of the lower central series; 1 means abelian.
template <class K>
int nilpotency_step(const LieAlgebra<K>& g) {
  // Current term of the series as a row-spanning matrix in rref.
  Mat<K> current = identity<K>(g.dim);
  std::vector<Vec<K>> gens;
  for (int i = 0; i < g.dim; ++i) gens.push_back(current[i]);

  int step = 0;
  std::size_t dim_prev = g.dim;
  while (true) {
    ++step;
    std::vector<Vec<K>> next_vecs;
    for (auto& x : gens)
      for (int j = 1; j <= g.dim; ++j) {
        Vec<K> ej(g.dim, K(0));
        ej[j - 1] = K(1);
        Vec<K> z = g.bracket(x, ej);
        bool nonzero = false;
        for (auto& c : z)
          if (!scalar_traits<K>::is_zero(c)) { nonzero = true; break; }
        if (nonzero) next_vecs.push_back(z);
      }
    if (next_vecs.empty()) return step;
    Mat<K> m = next_vecs;
    rref(m);
    gens.clear();
    for (auto& row : m) {
      bool nonzero = false;
      for (auto& c : row)
        if (!scalar_traits<K>::is_zero(c)) { nonzero = true; break; }
      if (nonzero) gens.push_back(row);
    }
    if (gens.size() >= dim_prev)
      throw MathError("lower central series does not descend; algebra is not nilpotent");
    dim_prev = gens.size();
    if (step > g.dim) throw MathError("lower central series failed to terminate");
  }
}

}  // namespace hypo
