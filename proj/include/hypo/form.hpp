#pragma once
// Sparse exterior algebra over a fixed coframe e^1..e^n, n <= 9.
//
// A monomial e^{i1...ik} with i1 < ... < ik is stored as a bitmask
// (bit i-1 set iff index i present), so wedge signs reduce to counting
// inversions between two masks and everything stays allocation-light.

#include <bit>
#include <cassert>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hypo/errors.hpp"
#include "hypo/linalg.hpp"
#include "hypo/rational.hpp"

namespace hypo {

using Monomial = std::uint16_t;

inline int mono_degree(Monomial m) { return std::popcount(m); }

// Indices of a monomial in increasing order, 1-based.
inline std::vector<int> mono_indices(Monomial m) {
  std::vector<int> ix;
  for (int i = 1; i <= 16; ++i)
    if (m & (Monomial(1) << (i - 1))) ix.push_back(i);
  return ix;
}

inline Monomial mono_of_indices(const std::vector<int>& ix) {
  Monomial m = 0;
  for (int i : ix) m |= Monomial(1) << (i - 1);
  return m;
}

// Sign of e^a ∧ e^b for disjoint masks: parity of the number of pairs
// (i in a, j in b) with i > j.
inline int wedge_sign(Monomial a, Monomial b) {
  int inv = 0;
  for (int i = 1; i <= 16; ++i) {
    if (!(a & (Monomial(1) << (i - 1)))) continue;
    inv += std::popcount(Monomial(b & ((Monomial(1) << (i - 1)) - 1)));
  }
  return (inv % 2 == 0) ? 1 : -1;
}

// Sign picked up when pulling index k out of the front of monomial m.
inline int interior_sign(Monomial m, int k) {
  return (std::popcount(Monomial(m & ((Monomial(1) << (k - 1)) - 1))) % 2 == 0) ? 1 : -1;
}

// Lexicographic order on index sequences; used only for canonical output.
inline bool mono_lex_less(Monomial a, Monomial b) {
  auto ia = mono_indices(a), ib = mono_indices(b);
  return ia < ib;
}

template <class K>
class Form {
 public:
  Form() : dim_(0), degree_(0) {}
  Form(int dim, int degree) : dim_(dim), degree_(degree) {
    assert(dim >= 0 && dim <= 9 && degree >= 0 && degree <= dim);
  }

  static Form monomial(int dim, const std::vector<int>& ix, K coeff = K(1)) {
    Form f(dim, (int)ix.size());
    f.add_term(mono_of_indices(ix), coeff);
    return f;
  }
  static Form generator(int dim, int i, K coeff = K(1)) { return monomial(dim, {i}, coeff); }
  static Form one_form(int dim, const Vec<K>& coeffs) {
    assert((int)coeffs.size() == dim);
    Form f(dim, 1);
    for (int i = 1; i <= dim; ++i) f.add_term(Monomial(1) << (i - 1), coeffs[i - 1]);
    return f;
  }

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, K>& terms() const { return terms_; }

  K coeff(const std::vector<int>& ix) const {
    auto it = terms_.find(mono_of_indices(ix));
    return it == terms_.end() ? K(0) : it->second;
  }

  void add_term(Monomial m, const K& c) {
    assert(mono_degree(m) == degree_);
    if (scalar_traits<K>::is_zero(c)) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (scalar_traits<K>::is_zero(it->second)) terms_.erase(it);
    }
  }

  Form& operator+=(const Form& o) {
    require_compatible(o);
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Form& operator-=(const Form& o) {
    require_compatible(o);
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Form& operator*=(const K& s) {
    if (scalar_traits<K>::is_zero(s)) { terms_.clear(); return *this; }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const K& s, Form a) { return a *= s; }
  friend Form operator-(Form a) { return a *= K(-1); }

  bool operator==(const Form& o) const {
    return dim_ == o.dim_ && degree_ == o.degree_ && terms_ == o.terms_;
  }

  friend Form wedge(const Form& a, const Form& b) {
    assert(a.dim_ == b.dim_);
    Form r(a.dim_, a.degree_ + b.degree_);
    if (a.degree_ + b.degree_ > a.dim_) return r;
    for (auto& [ma, ca] : a.terms_)
      for (auto& [mb, cb] : b.terms_) {
        if (ma & mb) continue;
        K c = ca * cb;
        if (wedge_sign(ma, mb) < 0) c = -c;
        r.add_term(ma | mb, c);
      }
    return r;
  }

  // Contraction with the frame vector dual to e^k.
  Form interior(int k) const {
    Form r(dim_, degree_ - 1);
    Monomial bit = Monomial(1) << (k - 1);
    for (auto& [m, c] : terms_) {
      if (!(m & bit)) continue;
      r.add_term(Monomial(m & ~bit), interior_sign(m, k) < 0 ? K(-c) : c);
    }
    return r;
  }

  // Contraction with an arbitrary vector, components in the dual frame.
  Form interior(const Vec<K>& x) const {
    assert((int)x.size() == dim_);
    Form r(dim_, degree_ - 1);
    for (int k = 1; k <= dim_; ++k) {
      if (scalar_traits<K>::is_zero(x[k - 1])) continue;
      r += x[k - 1] * interior(k);
    }
    return r;
  }

  // Evaluation on degree() vectors.
  K eval(const std::vector<Vec<K>>& xs) const {
    assert((int)xs.size() == degree_);
    K total(0);
    for (auto& [m, c] : terms_) {
      auto ix = mono_indices(m);
      Mat<K> sub = zeros<K>(degree_, degree_);
      for (int a = 0; a < degree_; ++a)
        for (int b = 0; b < degree_; ++b) sub[a][b] = xs[b][ix[a] - 1];
      total += c * det(sub);
    }
    return total;
  }

  // Algebra map induced by e^i -> one-form rows[i-1] (dim preserved).
  Form substitute(const Mat<K>& rows) const {
    assert((int)rows.size() == dim_);
    Form r(dim_, degree_);
    for (auto& [m, c] : terms_) {
      Form prod = Form::monomial(dim_, {}, c);  // degree-0 seed
      for (int i : mono_indices(m)) prod = wedge(prod, Form::one_form(dim_, rows[i - 1]));
      r += prod;
    }
    return r;
  }

  // Sum of squared coefficients (exact in rational mode).
  K norm2() const {
    K s(0);
    for (auto& [m, c] : terms_) s += c * c;
    return s;
  }
  double norm() const { return std::sqrt(to_double(norm2())); }

  template <class K2> Form<K2> convert() const {
    Form<K2> r(dim_, degree_);
    for (auto& [m, c] : terms_) r.add_term(m, K2(to_double(c)));
    return r;
  }

 private:
  void require_compatible(const Form& o) const {
    assert(dim_ == o.dim_);
    assert(degree_ == o.degree_ || is_zero() || o.is_zero());
  }

  int dim_, degree_;
  std::map<Monomial, K> terms_;
};

template <class K> Form<K> wedge_all(const std::vector<Form<K>>& fs) {
  assert(!fs.empty());
  Form<K> r = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) r = wedge(r, fs[i]);
  return r;
}

template <class K> double sup_coeff(const Form<K>& f) {
  double m = 0;
  for (auto& [mono, c] : f.terms()) m = std::max(m, scalar_traits<K>::abs_value(c));
  return m;
}

// Zero test that is exact over the rationals and relative over doubles.
template <class K> bool nearly_zero(const Form<K>& f, double scale = 1.0) {
  if constexpr (scalar_traits<K>::exact) {
    return f.is_zero();
  } else {
    for (auto& [mono, c] : f.terms())
      if (!scalar_traits<K>::negligible(c, scale)) return false;
    return true;
  }
}

template <class K> bool nearly_equal(const Form<K>& a, const Form<K>& b) {
  if constexpr (scalar_traits<K>::exact) {
    return a == b;
  } else {
    double scale = std::max({1.0, sup_coeff(a), sup_coeff(b)});
    return nearly_zero(a - b, scale);
  }
}

inline Form<double> to_numeric(const Form<Rational>& f) { return f.convert<double>(); }

// ---- notation ------------------------------------------------------------
//
// Sum of signed terms, each an optional rational coefficient ("2*", "1/2*")
// followed by a digit string of distinct indices: "12+13", "-2*45", "1+5".
// Unsorted index strings like "42" are accepted and canonicalized with the
// matching sign. "0" denotes the zero form.

namespace detail {
inline Rational parse_rational_token(const std::string& t) {
  auto slash = t.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(t));
    Integer num(t.substr(0, slash)), den(t.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + t + "'");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw ParseError("bad coefficient '" + t + "'");
  }
}
}  // namespace detail

inline Form<Rational> parse_form(const std::string& raw, int dim, int expected_degree = -1) {
  std::string s;
  for (char ch : raw)
    if (!std::isspace((unsigned char)ch)) s += ch;
  if (s.empty()) throw ParseError("empty form expression");

  struct Term { Rational c; std::string digits; };
  std::vector<Term> parsed;
  std::size_t pos = 0;
  bool zero_seen = false;
  while (pos < s.size()) {
    Rational sign(1);
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sign = -1;
      ++pos;
      if (pos == s.size()) throw ParseError("dangling sign in '" + raw + "'");
    } else if (pos > 0) {
      throw ParseError("expected '+' or '-' at '" + s.substr(pos) + "'");
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string term = s.substr(pos, end - pos);
    pos = end;
    if (term.empty()) throw ParseError("empty term in '" + raw + "'");
    if (term == "0") { zero_seen = true; continue; }
    Rational c = sign;
    std::string digits = term;
    auto star = term.find('*');
    if (star != std::string::npos) {
      c *= detail::parse_rational_token(term.substr(0, star));
      digits = term.substr(star + 1);
    }
    if (digits.empty()) throw ParseError("missing indices in '" + term + "'");
    for (char ch : digits)
      if (!std::isdigit((unsigned char)ch) || ch == '0')
        throw ParseError("bad index character in '" + term + "'");
    parsed.push_back({c, digits});
  }
  if (parsed.empty()) {
    if (!zero_seen) throw ParseError("no terms in '" + raw + "'");
    return Form<Rational>(dim, std::max(expected_degree, 0));
  }

  int degree = (int)parsed[0].digits.size();
  if (expected_degree >= 0 && degree != expected_degree)
    throw ParseError("expected degree " + std::to_string(expected_degree) + " in '" + raw + "'");
  Form<Rational> f(dim, degree);
  for (auto& t : parsed) {
    if ((int)t.digits.size() != degree)
      throw ParseError("mixed degrees in '" + raw + "'");
    std::vector<int> ix;
    Monomial seen = 0;
    Rational c = t.c;
    for (char ch : t.digits) {
      int i = ch - '0';
      if (i > dim) throw ParseError("index " + std::to_string(i) + " out of range in '" + raw + "'");
      Monomial bit = Monomial(1) << (i - 1);
      if (seen & bit) throw ParseError("repeated index in '" + t.digits + "'");
      seen |= bit;
      ix.push_back(i);
    }
    // Canonicalize unsorted index strings by inversion parity.
    int inv = 0;
    for (std::size_t a = 0; a < ix.size(); ++a)
      for (std::size_t b = a + 1; b < ix.size(); ++b)
        if (ix[a] > ix[b]) ++inv;
    if (inv % 2) c = -c;
    f.add_term(seen, c);
  }
  return f;
}

template <class K> std::string print_form(const Form<K>& f) {
  if (f.is_zero()) return "0";
  std::vector<Monomial> keys;
  for (auto& [m, c] : f.terms()) keys.push_back(m);
  std::sort(keys.begin(), keys.end(), mono_lex_less);
  std::ostringstream out;
  bool first = true;
  for (Monomial m : keys) {
    K c = f.terms().at(m);
    bool neg;
    std::string mag;
    if constexpr (scalar_traits<K>::exact) {
      neg = c < 0;
      Rational a = neg ? Rational(-c) : Rational(c);
      mag = (a == 1 && mono_degree(m) > 0) ? "" : to_string(a);
    } else {
      neg = c < 0;
      double a = neg ? -to_double(c) : to_double(c);
      if (a == 1.0 && mono_degree(m) > 0) {
        mag = "";
      } else {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", a);
        mag = buf;
      }
    }
    if (neg) out << "-";
    else if (!first) out << "+";
    out << mag;
    if (!mag.empty() && mono_degree(m) > 0) out << "*";
    for (int i : mono_indices(m)) out << i;
    first = false;
  }
  return out.str();
}

// Vectors X with X ⌟ f = 0, as coordinate vectors in the dual frame.
template <class K> std::vector<Vec<K>> annihilator(const Form<K>& f) {
  int n = f.dim();
  std::map<Monomial, std::size_t> row_of;
  std::vector<Form<K>> contractions;
  for (int k = 1; k <= n; ++k) {
    contractions.push_back(f.interior(k));
    for (auto& [m, c] : contractions.back().terms())
      row_of.emplace(m, row_of.size());
  }
  Mat<K> a = zeros<K>(row_of.size(), n);
  for (int k = 1; k <= n; ++k)
    for (auto& [m, c] : contractions[k - 1].terms()) a[row_of[m]][k - 1] = c;
  return kernel(a);
}

}  // namespace hypo
