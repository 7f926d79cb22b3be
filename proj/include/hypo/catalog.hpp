#pragma once
// Built-in table of 5-dimensional nilpotent Lie algebras together with the
// known closed SU(2)-structures on those that admit one. The same text ships
// as data/catalog.txt so external tools can read or override it.

#include <sstream>
#include <string>
#include <vector>

#include "hypo/su2.hpp"

namespace hypo {

struct CatalogEntry {
  std::string algebra;
  SU2Structure<Rational> structure;
};

// algebra | alpha | w1 | w2 | w3, one structure per line.
inline const char* catalog_text() {
  return R"(# closed SU(2)-structures on 5-dimensional nilpotent Lie algebras
# algebra | alpha | w1 | w2 | w3
(0,0,12,13,14)   | 1   | 25+43 | 24+35 | 23+54
(0,0,0,12,13+24) | 1+5 | 34+25 | 42-53 | 45-32
(0,0,0,12,13)    | 1   | 35+24 | 32+45 | 34+52
(0,0,0,12,13)    | 1   | 35-24 | -32+45 | 34-52
(0,0,0,0,12+34)  | 5   | 12+34 | 13+42 | 14+23
(0,0,0,0,12+34)  | 5   | 12-34 | 14-23 | 13-42
(0,0,0,0,12)     | 1   | 25+34 | 23+45 | 24+53
(0,0,0,0,12)     | 5   | 12+34 | 13+42 | 14+23
(0,0,0,0,12)     | 2-5 | 34+15 | 31+54 | 35+41
(0,0,0,0,0)      | 5   | 12+34 | 13+42 | 14+23
)";
}

inline std::vector<CatalogEntry> parse_catalog(const std::string& text) {
  std::vector<CatalogEntry> entries;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string stripped;
    for (char c : line)
      if (!std::isspace((unsigned char)c)) stripped += c;
    if (stripped.empty() || stripped[0] == '#') continue;
    std::vector<std::string> fields;
    std::string cur;
    for (char c : stripped) {
      if (c == '|') { fields.push_back(cur); cur.clear(); }
      else cur += c;
    }
    fields.push_back(cur);
    if (fields.size() != 5)
      throw ParseError("catalog line " + std::to_string(lineno) + ": expected 5 fields");
    CatalogEntry e;
    e.algebra = fields[0];
    int dim = parse_salamon(fields[0]).dim;
    e.structure = parse_su2<Rational>(dim, fields[1], fields[2], fields[3], fields[4]);
    entries.push_back(std::move(e));
  }
  return entries;
}

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = parse_catalog(catalog_text());
  return entries;
}

inline std::vector<CatalogEntry> catalog_for(const std::string& algebra) {
  std::string key;
  for (char c : algebra)
    if (!std::isspace((unsigned char)c)) key += c;
  std::vector<CatalogEntry> out;
  for (auto& e : catalog())
    if (e.algebra == key) out.push_back(e);
  return out;
}

// The classification rows in the usual order: algebra, admits a closed
// structure or not. Invariants (step, b2) are recomputed, not stored.
struct TableRow {
  const char* algebra;
  bool admits_hypo;
};

inline const std::vector<TableRow>& classification_rows() {
  static const std::vector<TableRow> rows = {
      {"(0,0,12,13,14+23)", false}, {"(0,0,12,13,14)", true},
      {"(0,0,12,13,23)", false},    {"(0,0,0,12,14)", false},
      {"(0,0,0,12,13+24)", true},   {"(0,0,0,12,13)", true},
      {"(0,0,0,0,12+34)", true},    {"(0,0,0,0,12)", true},
      {"(0,0,0,0,0)", true},
  };
  return rows;
}

// One-parameter family of closed structures on (0,0,0,12,13+24); the
// catalog line is the c = 0 member.
inline SU2Structure<Rational> family_13_24(const Rational& c) {
  int dim = 5;
  auto e = [&](int i) { return Form<Rational>::generator(dim, i); };
  Form<Rational> u = Rational(-c) * e(2) - e(3);
  SU2Structure<Rational> s;
  s.alpha = e(1) + e(5);
  s.omega1 = wedge(e(4), u) + parse_form("25", dim);
  s.omega2 = parse_form("42", dim) + wedge(e(5), u);
  s.omega3 = parse_form("45", dim) + wedge(u, e(2));
  return s;
}

}  // namespace hypo
