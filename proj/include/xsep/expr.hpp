#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "xsep/cones.hpp"
#include "xsep/errors.hpp"

namespace xsep {

// Lattice word over the generators A, B, C with meet (&) and join (|).
struct ConeExpr {
  enum class Kind { Gen, Meet, Join };
  Kind kind = Kind::Gen;
  int gen = 0;  // 0 = A, 1 = B, 2 = C
  std::vector<ConeExpr> children;

  static ConeExpr generator(int g) { return {Kind::Gen, g, {}}; }
  static ConeExpr meet(std::vector<ConeExpr> ch) { return {Kind::Meet, 0, std::move(ch)}; }
  static ConeExpr join(std::vector<ConeExpr> ch) { return {Kind::Join, 0, std::move(ch)}; }
};

inline int expr_compare(const ConeExpr& x, const ConeExpr& y) {
  if (x.kind != y.kind) return static_cast<int>(x.kind) < static_cast<int>(y.kind) ? -1 : 1;
  if (x.kind == ConeExpr::Kind::Gen) return x.gen == y.gen ? 0 : (x.gen < y.gen ? -1 : 1);
  std::size_t n = std::min(x.children.size(), y.children.size());
  for (std::size_t i = 0; i < n; ++i)
    if (int c = expr_compare(x.children[i], y.children[i])) return c;
  if (x.children.size() != y.children.size()) return x.children.size() < y.children.size() ? -1 : 1;
  return 0;
}

inline bool expr_equal(const ConeExpr& x, const ConeExpr& y) { return expr_compare(x, y) == 0; }

inline std::string expr_str(const ConeExpr& e, bool parens = false) {
  if (e.kind == ConeExpr::Kind::Gen) return std::string(1, "ABC"[e.gen]);
  const char* op = e.kind == ConeExpr::Kind::Meet ? "&" : "|";
  std::string s;
  for (std::size_t i = 0; i < e.children.size(); ++i) {
    if (i) s += op;
    const ConeExpr& c = e.children[i];
    bool need = c.kind != ConeExpr::Kind::Gen &&
                (e.kind == ConeExpr::Kind::Meet || c.kind == ConeExpr::Kind::Meet);
    s += expr_str(c, need);
  }
  if (parens) return "(" + s + ")";
  return s;
}

// Grammar: expr := term ('|' term)*; term := factor ('&' factor)*;
// factor := A | B | C | '(' expr ')'.  '&' binds tighter than '|'.
class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  ConeExpr parse() {
    ConeExpr e = parse_join();
    skip_ws();
    if (pos_ != text_.size()) throw SyntaxError("unexpected trailing input", pos_);
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ConeExpr parse_join() {
    std::vector<ConeExpr> ch{parse_meet()};
    while (eat('|')) ch.push_back(parse_meet());
    if (ch.size() == 1) return ch[0];
    return ConeExpr::join(std::move(ch));
  }

  ConeExpr parse_meet() {
    std::vector<ConeExpr> ch{parse_factor()};
    while (eat('&')) ch.push_back(parse_factor());
    if (ch.size() == 1) return ch[0];
    return ConeExpr::meet(std::move(ch));
  }

  ConeExpr parse_factor() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of expression", pos_);
    char c = text_[pos_];
    if (c == 'A' || c == 'B' || c == 'C') {
      ++pos_;
      return ConeExpr::generator(c - 'A');
    }
    if (c == '(') {
      ++pos_;
      ConeExpr e = parse_join();
      if (!eat(')')) throw SyntaxError("expected ')'", pos_);
      return e;
    }
    throw SyntaxError(std::string("expected generator or '(', got '") + c + "'", pos_);
  }
};

inline ConeExpr parse_expr(std::string_view text) { return ExprParser(text).parse(); }

// Order of the free lattice on three generators (Whitman's condition).
// e1 <= e2 here implies containment of the corresponding cones in any
// lattice of convex cones; the converse need not hold.
inline bool free_le(const ConeExpr& x, const ConeExpr& y) {
  using K = ConeExpr::Kind;
  if (x.kind == K::Join)
    return std::all_of(x.children.begin(), x.children.end(),
                       [&](const ConeExpr& c) { return free_le(c, y); });
  if (y.kind == K::Meet)
    return std::all_of(y.children.begin(), y.children.end(),
                       [&](const ConeExpr& c) { return free_le(x, c); });
  if (x.kind == K::Gen && y.kind == K::Gen) return x.gen == y.gen;
  if (x.kind == K::Gen)  // y is Join
    return std::any_of(y.children.begin(), y.children.end(),
                       [&](const ConeExpr& c) { return free_le(x, c); });
  if (y.kind == K::Gen)  // x is Meet
    return std::any_of(x.children.begin(), x.children.end(),
                       [&](const ConeExpr& c) { return free_le(c, y); });
  // x is Meet, y is Join: Whitman's condition (W).
  return std::any_of(x.children.begin(), x.children.end(),
                     [&](const ConeExpr& c) { return free_le(c, y); }) ||
         std::any_of(y.children.begin(), y.children.end(),
                     [&](const ConeExpr& c) { return free_le(x, c); });
}

// Canonical form under associativity, commutativity, idempotence and
// absorption.  Distributive rewriting is deliberately never applied: the
// lattice under study fails it.
inline ConeExpr normalize(const ConeExpr& e) {
  if (e.kind == ConeExpr::Kind::Gen) return e;
  std::vector<ConeExpr> ch;
  for (const ConeExpr& c : e.children) {
    ConeExpr n = normalize(c);
    if (n.kind == e.kind) {  // flatten associativity
      for (ConeExpr& g : n.children) ch.push_back(std::move(g));
    } else {
      ch.push_back(std::move(n));
    }
  }
  // Absorption via the free-lattice order: in a meet, a child dominated by a
  // sibling is redundant; dually for joins.  Subsumes idempotence.
  const bool is_meet = e.kind == ConeExpr::Kind::Meet;
  std::vector<ConeExpr> kept;
  for (std::size_t i = 0; i < ch.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < ch.size() && !redundant; ++j) {
      if (i == j) continue;
      bool dominated = is_meet ? free_le(ch[j], ch[i]) : free_le(ch[i], ch[j]);
      if (dominated) {
        int cmp = expr_compare(ch[i], ch[j]);
        bool mutual = is_meet ? free_le(ch[i], ch[j]) : free_le(ch[j], ch[i]);
        // On mutual domination keep the canonically smaller / earlier one.
        redundant = !mutual || cmp > 0 || (cmp == 0 && i > j);
      }
    }
    if (!redundant) kept.push_back(ch[i]);
  }
  std::sort(kept.begin(), kept.end(),
            [](const ConeExpr& a, const ConeExpr& b) { return expr_compare(a, b) < 0; });
  if (kept.size() == 1) return kept[0];
  ConeExpr out;
  out.kind = e.kind;
  out.children = std::move(kept);
  return out;
}

inline ConeExpr tag_expr(ConeTag tag) {
  auto g = ConeExpr::generator;
  switch (tag) {
    case ConeTag::A: return g(0);
    case ConeTag::B: return g(1);
    case ConeTag::C: return g(2);
    case ConeTag::AmB: return ConeExpr::meet({g(0), g(1)});
    case ConeTag::BmC: return ConeExpr::meet({g(1), g(2)});
    case ConeTag::CmA: return ConeExpr::meet({g(0), g(2)});
    case ConeTag::AmBmC: return ConeExpr::meet({g(0), g(1), g(2)});
    case ConeTag::AjB: return ConeExpr::join({g(0), g(1)});
    case ConeTag::BjC: return ConeExpr::join({g(1), g(2)});
    case ConeTag::CjA: return ConeExpr::join({g(0), g(2)});
    case ConeTag::AjBjC: return ConeExpr::join({g(0), g(1), g(2)});
    case ConeTag::AjBmC: return ConeExpr::join({g(0), ConeExpr::meet({g(1), g(2)})});
    case ConeTag::BjCmA: return ConeExpr::join({g(1), ConeExpr::meet({g(0), g(2)})});
    default: return ConeExpr::join({g(2), ConeExpr::meet({g(0), g(1)})});
  }
}

// Requirement set for every normalized expression the catalog decides in
// closed form: generators, the characterized joins, and arbitrary meets of
// such.  Returns false when the expression is outside the catalog.
inline bool closed_form_atoms(const ConeExpr& e, std::vector<SAtom>& out) {
  using K = ConeExpr::Kind;
  if (e.kind == K::Gen) {
    append_gen_s1(out, e.gen);
    return true;
  }
  if (e.kind == K::Meet) {
    for (const ConeExpr& c : e.children)
      if (!closed_form_atoms(c, out)) return false;
    return true;
  }
  // Joins: B|C style, A|B|C, and gen | (meet of the two other generators).
  std::vector<int> gens;
  const ConeExpr* meet_child = nullptr;
  for (const ConeExpr& c : e.children) {
    if (c.kind == K::Gen) {
      gens.push_back(c.gen);
    } else if (c.kind == K::Meet && !meet_child) {
      meet_child = &c;
    } else {
      return false;
    }
  }
  if (!meet_child && gens.size() == 2) {
    int other = 3 - gens[0] - gens[1];
    out.push_back(SAtom::s2(join_s2_pair(other)));
    return true;
  }
  if (!meet_child && gens.size() == 3) {
    for (int r = 0; r < 4; ++r) out.push_back(SAtom::s3(r));
    return true;
  }
  if (meet_child && gens.size() == 1 && meet_child->children.size() == 2 &&
      meet_child->children[0].kind == K::Gen && meet_child->children[1].kind == K::Gen) {
    int g = gens[0];
    int m0 = meet_child->children[0].gen, m1 = meet_child->children[1].gen;
    if (m0 + m1 + g == 3 && m0 != m1 && m0 != g && m1 != g) {
      append_s4_family(out, g);
      return true;
    }
  }
  return false;
}

}  // namespace xsep
