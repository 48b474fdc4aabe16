#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "xsep/cones.hpp"
#include "xsep/expr.hpp"
#include "xsep/xmatrix.hpp"

namespace xsep {

// rho_{s,t} = (1-s-t) rho_00 + s rho_10 + t rho_01
//           = (1/8) X(1+t/3, 1+s-t/3, 1-s-t/3, 1+t/3; s+4t/3, 2t/3, 2t/3, s),
// GHZ diagonal; a state exactly when (s,t) lies in the quadrilateral R.
template <class S>
XMat<S> rho_st(const S& s, const S& t) {
  auto r = [](long long n, long long d) { return num::from_ratio<S>(n, d); };
  S third_t = t / S(3);
  GhzDiagonal<S> g;
  g.a = {S(1) + third_t, S(1) + s - third_t, S(1) - s - third_t, S(1) + third_t};
  g.c = {s + S(4) * third_t, S(2) * third_t, S(2) * third_t, s};
  S eighth = r(1, 8);
  for (auto& v : g.a) v = eighth * v;
  for (auto& v : g.c) v = eighth * v;
  return g.to_xmat();
}

// rho_t = (1-t) rho_00 + t rho_1 = (1/24) X(3+t, 3-t, 3-t, 3+t; 4t, 0, 2t, 0),
// the modularity family; 0 <= t <= 1.
template <class S>
XMat<S> rho_modular(const S& t) {
  if (t < S(0) || t > S(1)) throw OutOfRange("rho_modular requires 0 <= t <= 1");
  GhzDiagonal<S> g;
  g.a = {S(3) + t, S(3) - t, S(3) - t, S(3) + t};
  g.c = {S(4) * t, S(0), S(2) * t, S(0)};
  S f = num::from_ratio<S>(1, 24);
  for (auto& v : g.a) v = f * v;
  for (auto& v : g.c) v = f * v;
  return g.to_xmat();
}

// The witness separating the modularity chain: X((0,1,1,0),(0,1,1,0),(-1,0,-1,0)).
template <class S>
XMat<S> modularity_witness() {
  XMat<S> w;
  w.a = {S(0), S(1), S(1), S(0)};
  w.b = w.a;
  w.z[0] = Cx<S>(S(-1));
  w.z[2] = Cx<S>(S(-1));
  return w;
}

enum class RegionTag { R, BetaPentagon, GammaPentagon, H1, H2, FullSep };

inline const char* region_tag_name(RegionTag t) {
  switch (t) {
    case RegionTag::R: return "R";
    case RegionTag::BetaPentagon: return "beta";
    case RegionTag::GammaPentagon: return "gamma";
    case RegionTag::H1: return "H1";
    case RegionTag::H2: return "H2";
    default: return "fullsep";
  }
}

// Vertex lists on the (s, t) plane (counter-/clockwise as in the figures).
inline const std::vector<std::pair<Rational, Rational>>& region_vertices(RegionTag tag) {
  using P = std::pair<Rational, Rational>;
  auto q = [](long long n, long long d) { return Rational(BigInt(n), BigInt(d)); };
  static const std::vector<P> r = {{1, 0}, {0, 1}, {-1, 0}, {q(2, 3), -1}};
  static const std::vector<P> beta = {
      {q(-2, 5), q(3, 5)}, {q(-2, 11), q(9, 11)}, {q(6, 7), q(-3, 7)}, {q(2, 3), -1}, {q(-6, 11), q(-3, 11)}};
  static const std::vector<P> gamma = {
      {q(-2, 5), q(3, 5)}, {q(2, 5), q(3, 5)}, {q(2, 3), -1}, {q(-2, 7), q(-3, 7)}, {q(-2, 3), q(1, 3)}};
  static const std::vector<P> h1 = {{q(-2, 11), q(9, 11)},  {q(2, 5), q(3, 5)},
                                    {q(6, 7), q(-3, 7)},    {q(2, 3), -1},
                                    {q(-6, 11), q(-3, 11)}, {q(-10, 13), q(3, 13)}};
  static const std::vector<P> h2 = {{q(-2, 5), q(3, 5)}, {0, q(3, 5)},         {q(1, 2), 0},
                                    {q(2, 3), -1},       {q(-2, 7), q(-3, 7)}, {q(-1, 2), 0}};
  static const std::vector<P> none = {};
  switch (tag) {
    case RegionTag::R: return r;
    case RegionTag::BetaPentagon: return beta;
    case RegionTag::GammaPentagon: return gamma;
    case RegionTag::H1: return h1;
    case RegionTag::H2: return h2;
    default: return none;
  }
}

namespace detail {

// Track the minimum margin of a system of half-plane constraints.
template <class S>
struct MarginAcc {
  bool first = true;
  S value{0};
  void add(const S& m) {
    if (first || m < value) {
      value = m;
      first = false;
    }
  }
};

// Half-planes alpha s + beta t <= 1, coefficients as small ratios.
template <class S>
void r_margins(const S& s, const S& t, MarginAcc<S>& acc) {
  auto r = [](long long n, long long d) { return num::from_ratio<S>(n, d); };
  acc.add(S(1) - (s + t));
  acc.add(S(1) - (-s + t));
  acc.add(S(1) - (-s - r(5, 3) * t));
  acc.add(S(1) - (s - r(1, 3) * t));
}

// Convex polygon from its clockwise vertex list: inside iff every edge cross
// product is <= 0; margins are the negated cross products.
template <class S>
void polygon_margins(RegionTag tag, const S& s, const S& t, MarginAcc<S>& acc) {
  const auto& vs = region_vertices(tag);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const auto& p = vs[i];
    const auto& q = vs[(i + 1) % vs.size()];
    S px, py, qx, qy;
    if constexpr (num::is_exact_v<S>) {
      px = p.first;
      py = p.second;
      qx = q.first;
      qy = q.second;
    } else {
      px = num::to_double(p.first);
      py = num::to_double(p.second);
      qx = num::to_double(q.first);
      qy = num::to_double(q.second);
    }
    S cross = (qx - px) * (t - py) - (qy - py) * (s - px);
    acc.add(S(-cross));
  }
}

}  // namespace detail

// Closed-form region predicates of the figures.  The pentagons and H1 carry
// their "within R" constraints; H2 is the hexagon spanned by its vertices.
template <class S>
Verdict<S> region(RegionTag tag, const S& s, const S& t, const Context<S>& ctx) {
  auto r = [](long long n, long long d) { return num::from_ratio<S>(n, d); };
  detail::MarginAcc<S> acc;
  switch (tag) {
    case RegionTag::R:
      detail::r_margins(s, t, acc);
      break;
    case RegionTag::BetaPentagon:
      detail::r_margins(s, t, acc);
      acc.add(S(1) - (S(2) * s + r(5, 3) * t));
      acc.add(S(1) - (S(-2) * s + r(1, 3) * t));
      break;
    case RegionTag::GammaPentagon:
      detail::r_margins(s, t, acc);
      acc.add(S(1) - r(5, 3) * t);
      acc.add(S(1) - (S(-2) * s - t));
      acc.add(S(1) - (S(2) * s + r(1, 3) * t));
      break;
    case RegionTag::H1:
      detail::r_margins(s, t, acc);
      acc.add(S(1) - (r(1, 2) * s + r(4, 3) * t));
      acc.add(S(1) - (r(3, 2) * s + r(2, 3) * t));
      acc.add(S(1) - (r(-3, 2) * s - r(2, 3) * t));
      break;
    case RegionTag::H2:
      detail::polygon_margins(RegionTag::H2, s, t, acc);
      break;
    case RegionTag::FullSep: {
      // Branch conditions specialized to rho_{s,t}:
      //   s(3s+4t) < 0 and (9s^2+18st+4t^2)(9s^2+6st-4t^2) > 0,
      // then min a_i >= RHS with RHS^2 = t^2(9s^2+12st-4t^2)/(432 s(3s+4t));
      // otherwise full separability is PPT, the hexagon H2.
      S p1 = s * (S(3) * s + S(4) * t);
      S p2 = (S(9) * s * s + S(18) * s * t + S(4) * t * t) *
             (S(9) * s * s + S(6) * s * t - S(4) * t * t);
      if (!(ctx.sign(p1) == Sign::Negative && ctx.sign(p2) == Sign::Positive)) {
        detail::polygon_margins(RegionTag::H2, s, t, acc);
        break;
      }
      detail::r_margins(s, t, acc);
      S third_t = t / S(3);
      S min_a = std::min(std::min(S(1) + third_t, S(1) + s - third_t), S(1) - s - third_t) / S(8);
      S rhs2 = t * t * (S(9) * s * s + S(12) * s * t - S(4) * t * t) / (S(432) * p1);
      if constexpr (num::is_exact_v<S>) {
        acc.add(S(min_a * min_a - rhs2));
      } else {
        acc.add(min_a - num::sqrt_of(std::max(rhs2, S(0))));
      }
      break;
    }
  }
  S margin = acc.first ? S(0) : acc.value;
  return Verdict<S>{ctx.membership(margin), margin, region_tag_name(tag)};
}

// A column of the slice table: a closed-form cone membership, the GHZ
// full-separability test, or a region predicate.
struct Classifier {
  enum class Kind { Member, MemberExpr, FullSepMember, Region } kind;
  ConeTag tag = ConeTag::A;
  RegionTag rtag = RegionTag::R;
  ConeExpr expr;
  std::string name;

  static Classifier member(ConeTag t) { return {Kind::Member, t, RegionTag::R, {}, cone_tag_name(t)}; }
  static Classifier member_expr(const std::string& text) {
    ConeExpr e = normalize(parse_expr(text));
    return {Kind::MemberExpr, ConeTag::A, RegionTag::R, e, text};
  }
  static Classifier fullsep_member() {
    return {Kind::FullSepMember, ConeTag::A, RegionTag::R, {}, "fullsep-ghz"};
  }
  static Classifier region_of(RegionTag t) {
    return {Kind::Region, ConeTag::A, t, {}, std::string("region:") + region_tag_name(t)};
  }
};

struct GridSpec {
  int n = 401;  // points per axis, >= 2
  Rational s_lo{-11, 10}, s_hi{11, 10};
  Rational t_lo{-11, 10}, t_hi{11, 10};
};

template <class S>
struct SliceTable {
  GridSpec grid;
  std::vector<S> svals, tvals;
  std::vector<Classifier> classifiers;
  std::vector<Membership> flags;  // [t index][s index][classifier]

  Membership at(int ti, int si, std::size_t ci) const {
    return flags[(static_cast<std::size_t>(ti) * svals.size() + si) * classifiers.size() + ci];
  }
};

template <class S>
SliceTable<S> scan(const GridSpec& grid, const std::vector<Classifier>& classifiers,
                   const Context<S>& ctx) {
  if (grid.n < 2) throw OutOfRange("grid resolution must be at least 2");
  SliceTable<S> tbl;
  tbl.grid = grid;
  tbl.classifiers = classifiers;
  auto axis = [&](const Rational& lo, const Rational& hi) {
    std::vector<S> v;
    Rational step = (hi - lo) / Rational(grid.n - 1);
    for (int k = 0; k < grid.n; ++k) {
      Rational x = lo + Rational(k) * step;
      if constexpr (num::is_exact_v<S>)
        v.push_back(x);
      else
        v.push_back(num::to_double(x));
    }
    return v;
  };
  tbl.svals = axis(grid.s_lo, grid.s_hi);
  tbl.tvals = axis(grid.t_lo, grid.t_hi);
  tbl.flags.reserve(static_cast<std::size_t>(grid.n) * grid.n * classifiers.size());

  std::vector<std::vector<SAtom>> expr_atoms(classifiers.size());
  for (std::size_t ci = 0; ci < classifiers.size(); ++ci) {
    if (classifiers[ci].kind == Classifier::Kind::MemberExpr &&
        !closed_form_atoms(classifiers[ci].expr, expr_atoms[ci]))
      throw UnsupportedCone("classifier expression has no closed form: " + classifiers[ci].name);
  }

  for (const S& t : tbl.tvals) {
    for (const S& s : tbl.svals) {
      XMat<S> m = rho_st(s, t);
      auto st = XState<S>::make(m, ctx);
      for (std::size_t ci = 0; ci < classifiers.size(); ++ci) {
        const Classifier& cl = classifiers[ci];
        Membership out;
        switch (cl.kind) {
          case Classifier::Kind::Member:
            out = st ? member(*st, cl.tag, ctx).kind : Membership::Out;
            break;
          case Classifier::Kind::MemberExpr:
            out = st ? eval_requirements(*st, expr_atoms[ci], ctx).kind : Membership::Out;
            break;
          case Classifier::Kind::FullSepMember:
            if (st) {
              auto g = GhzDiagonal<S>::from_xmat(m);
              out = fully_separable_ghz(*g, ctx).kind;
            } else {
              out = Membership::Out;
            }
            break;
          default:
            out = region(cl.rtag, s, t, ctx).kind;
        }
        tbl.flags.push_back(out);
      }
    }
  }
  return tbl;
}

// The identifications the figures assert between closed-form members and the
// region predicates; counted over grid points inside (the closure of) R.
inline const std::vector<std::pair<std::string, std::string>>& expected_identifications() {
  static const std::vector<std::pair<std::string, std::string>> ids = {
      {"A", "region:R"},          {"A|B", "region:R"},       {"B|C", "region:R"},
      {"C|A", "region:R"},        {"A|B|C", "region:R"},     {"A&(B|C)", "region:R"},
      {"B", "region:beta"},       {"C", "region:gamma"},     {"B|(C&A)", "region:H1"},
      {"C|(A&B)", "region:H1"},   {"A&B&C", "region:H2"},    {"fullsep-ghz", "region:fullsep"},
  };
  return ids;
}

template <class S>
long mismatch_count(const SliceTable<S>& tbl) {
  long mismatches = 0;
  std::ptrdiff_t rcol = -1;
  for (std::size_t ci = 0; ci < tbl.classifiers.size(); ++ci)
    if (tbl.classifiers[ci].name == "region:R") rcol = static_cast<std::ptrdiff_t>(ci);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& [a, b] : expected_identifications()) {
    std::ptrdiff_t ia = -1, ib = -1;
    for (std::size_t ci = 0; ci < tbl.classifiers.size(); ++ci) {
      if (tbl.classifiers[ci].name == a) ia = static_cast<std::ptrdiff_t>(ci);
      if (tbl.classifiers[ci].name == b) ib = static_cast<std::ptrdiff_t>(ci);
    }
    if (ia >= 0 && ib >= 0) pairs.emplace_back(ia, ib);
  }
  if (rcol < 0 || pairs.empty()) return 0;
  for (int ti = 0; ti < static_cast<int>(tbl.tvals.size()); ++ti)
    for (int si = 0; si < static_cast<int>(tbl.svals.size()); ++si) {
      if (tbl.at(ti, si, rcol) == Membership::Out) continue;
      for (auto [ia, ib] : pairs)
        if (tbl.at(ti, si, ia) != tbl.at(ti, si, ib)) ++mismatches;
    }
  return mismatches;
}

inline std::vector<Classifier> figure1_classifiers() {
  return {
      Classifier::member(ConeTag::A),
      Classifier::member(ConeTag::B),
      Classifier::member(ConeTag::C),
      Classifier::member(ConeTag::AjB),
      Classifier::member(ConeTag::BjC),
      Classifier::member(ConeTag::CjA),
      Classifier::member(ConeTag::AjBjC),
      Classifier::member_expr("A&(B|C)"),
      Classifier::member(ConeTag::BjCmA),
      Classifier::member(ConeTag::CjAmB),
      Classifier::member(ConeTag::AmBmC),
      Classifier::region_of(RegionTag::R),
      Classifier::region_of(RegionTag::BetaPentagon),
      Classifier::region_of(RegionTag::GammaPentagon),
      Classifier::region_of(RegionTag::H1),
      Classifier::region_of(RegionTag::H2),
  };
}

inline std::vector<Classifier> figure2_classifiers() {
  return {
      Classifier::member(ConeTag::AmBmC),
      Classifier::fullsep_member(),
      Classifier::region_of(RegionTag::R),
      Classifier::region_of(RegionTag::H2),
      Classifier::region_of(RegionTag::FullSep),
  };
}

}  // namespace xsep
