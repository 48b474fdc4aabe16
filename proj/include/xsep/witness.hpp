#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "xsep/cones.hpp"
#include "xsep/expr.hpp"
#include "xsep/linprog.hpp"
#include "xsep/xmatrix.hpp"

namespace xsep {

// One atomic W-inequality; a dual cone in the catalog is a conjunction.
struct DualAtom {
  enum class Kind { W1, W2, W3 } kind;
  PairIndex p{0, 1};

  static DualAtom w1(PairIndex p) { return {Kind::W1, p}; }
  static DualAtom w2(PairIndex p) { return {Kind::W2, p}; }
  static DualAtom w3() { return {Kind::W3, pairs::p12}; }

  std::string name() const {
    switch (kind) {
      case Kind::W1: return "W1" + p.str();
      case Kind::W2: return "W2" + p.str();
      default: return "W3";
    }
  }

  bool operator==(const DualAtom& o) const { return kind == o.kind && (kind == Kind::W3 || p == o.p); }
};

// A dual cone with a W-inequality characterization.  Constructed by
// dualizing a primal lattice word: generators dualize to W1 sets, meets of
// two generators to the W2/W3 sets of the dual join, and joins to
// conjunctions (meet of duals).
class DualCone {
 public:
  static DualCone of_gen(int g) {
    DualCone d;
    d.name_ = std::string(1, "ABC"[g]) + "*";
    for (PairIndex p : gen_s1_pairs(g)) d.atoms_.push_back(DualAtom::w1(p));
    return d;
  }

  // Dual of the meet of the two generators other than `other`, e.g.
  // other = A gives B* | C* characterized by W2[1,4], W2[2,3], W3.
  static DualCone join_of_duals_opposite(int other) {
    static constexpr const char* names[] = {"B*|C*", "C*|A*", "A*|B*"};
    DualCone d;
    d.name_ = names[other];
    for (PairIndex p : gen_s1_pairs(other)) d.atoms_.push_back(DualAtom::w2(p));
    d.atoms_.push_back(DualAtom::w3());
    return d;
  }

  // Dualize a normalized cone expression, De Morgan style.  Returns nullopt
  // when some piece falls outside the catalog (e.g. a meet of three
  // generators, whose dual join has no W characterization here).
  static std::optional<DualCone> dual_of(const ConeExpr& e) {
    using K = ConeExpr::Kind;
    if (e.kind == K::Gen) return of_gen(e.gen);
    if (e.kind == K::Join) {
      DualCone acc;
      std::vector<std::string> parts;
      for (const ConeExpr& c : e.children) {
        auto d = dual_of(c);
        if (!d) return std::nullopt;
        parts.push_back(d->atoms_.size() > 2 || c.kind != K::Gen ? "(" + d->name_ + ")" : d->name_);
        for (const DualAtom& a : d->atoms_) acc.push_atom(a);
      }
      acc.name_ = parts[0];
      for (std::size_t i = 1; i < parts.size(); ++i) acc.name_ += "&" + parts[i];
      return acc;
    }
    // Meet: only a meet of exactly two distinct generators dualizes inside
    // the catalog.
    if (e.children.size() == 2 && e.children[0].kind == K::Gen && e.children[1].kind == K::Gen) {
      int g0 = e.children[0].gen, g1 = e.children[1].gen;
      if (g0 != g1) return join_of_duals_opposite(3 - g0 - g1);
    }
    return std::nullopt;
  }

  const std::vector<DualAtom>& atoms() const { return atoms_; }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  std::vector<DualAtom> atoms_;

  void push_atom(const DualAtom& a) {
    if (std::find(atoms_.begin(), atoms_.end(), a) == atoms_.end()) atoms_.push_back(a);
  }
};

// Witness candidate W = X(s, t, u) with cached sqrt(s_i t_i) and |u_i|.
template <class S>
class WitnessEval {
 public:
  explicit WitnessEval(const XMat<S>& body) : body_(body) {
    for (int i = 0; i < 4; ++i) {
      if (body.a[i] < S(0) || body.b[i] < S(0))
        throw NegativeDiagonal("witness diagonal must be nonnegative");
      if constexpr (num::is_exact_v<S>) {
        rw_[i] = num::sqrt_of(S(body.a[i] * body.b[i]));
      } else {
        rw_[i] = num::sqrt_of(body.a[i] * body.b[i]);
      }
      au_[i] = abs_of(body.z[i]);
    }
  }

  const XMat<S>& body() const { return body_; }
  const std::array<S, 4>& rw() const { return rw_; }
  const std::array<S, 4>& au() const { return au_; }

 private:
  XMat<S> body_;
  std::array<S, 4> rw_{};
  std::array<S, 4> au_{};
};

// W1[i,j]: sqrt(s_i t_i) + sqrt(s_j t_j) >= |u_i| + |u_j|
template <class S>
S w1_margin(const WitnessEval<S>& w, PairIndex p) {
  return w.rw()[p.i] + w.rw()[p.j] - (w.au()[p.i] + w.au()[p.j]);
}

// W2[i,j]: both row inequalities; returns the smaller row margin.
template <class S>
S w2_margin(const WitnessEval<S>& w, PairIndex p) {
  S total(0);
  for (int k = 0; k < 4; ++k) total += w.rw()[k];
  S row1 = total - w.rw()[p.j] - w.au()[p.i];
  S row2 = total - w.rw()[p.i] - w.au()[p.j];
  return std::min(row1, row2);
}

// W3: sum sqrt(s_i t_i) >= sum |u_i|
template <class S>
S w3_margin(const WitnessEval<S>& w) {
  S acc(0);
  for (int k = 0; k < 4; ++k) acc += w.rw()[k] - w.au()[k];
  return acc;
}

template <class S>
S dual_atom_margin(const WitnessEval<S>& w, const DualAtom& atom) {
  switch (atom.kind) {
    case DualAtom::Kind::W1: return w1_margin(w, atom.p);
    case DualAtom::Kind::W2: return w2_margin(w, atom.p);
    default: return w3_margin(w);
  }
}

template <class S>
Verdict<S> member_dual(const WitnessEval<S>& w, const DualCone& dual, const Context<S>& ctx) {
  Verdict<S> v{Membership::In, S(0), "trivial"};
  bool first = true;
  for (const DualAtom& atom : dual.atoms()) {
    S margin = dual_atom_margin(w, atom);
    if (first || margin < v.margin) {
      v.margin = margin;
      v.binding = atom.name();
      first = false;
    }
  }
  if (!first) v.kind = ctx.membership(v.margin);
  return v;
}

template <class S>
Verdict<S> member_dual(const XMat<S>& body, const DualCone& dual, const Context<S>& ctx) {
  return member_dual(WitnessEval<S>(body), dual, ctx);
}

// A witness together with the dual cone it has been verified to inhabit.
template <class S>
struct Witness {
  XMat<S> body;
  std::optional<DualCone> dual;
};

template <class S>
struct CertifiedWitness {
  Witness<S> witness;
  S pairing_value;
};

// W_[i,j|k,l] from the proof of the join characterization: diagonal weights
// sqrt(b/a), sqrt(a/b) on the slots of p, anti-diagonal -exp(-i theta) on the
// slots of q.  Pairing against the source state equals
// 2 (sqrt(a_i b_i) + sqrt(a_j b_j) - |z_k| - |z_l|).
//
// Zero diagonal entries are handled by the proof's regularization: the
// witness is built from m + eps X(1,1,0).  In exact mode eps falls back to
// 1/10^9 since the exact tolerance is zero.
template <class S>
XMat<S> construct_pair_witness(const XState<S>& m, PairIndex p, PairIndex q, const Context<S>& ctx,
                               bool regularize = true) {
  const XMat<S>& x = m.mat();
  bool degenerate = false;
  for (int slot : {p.i, p.j})
    if (ctx.sign(x.a[slot]) != Sign::Positive || ctx.sign(x.b[slot]) != Sign::Positive)
      degenerate = true;
  XMat<S> src = x;
  if (degenerate) {
    if (!regularize) throw DegenerateEntries();
    S eps = ctx.tol > S(0) ? ctx.tol : num::from_ratio<S>(1, 1000000000);
    for (int i = 0; i < 4; ++i) {
      src.a[i] += eps;
      src.b[i] += eps;
    }
  }
  XMat<S> w;
  for (int slot : {p.i, p.j}) {
    w.a[slot] = num::sqrt_of(S(src.b[slot] / src.a[slot]));
    w.b[slot] = num::sqrt_of(S(src.a[slot] / src.b[slot]));
  }
  for (int slot : {q.i, q.j}) w.z[slot] = -unit_phase(src.z[slot]).conj();
  return w;
}

namespace detail {

// GHZ-diagonal witness search as an exact LP.  Variables (s, v) with the
// symmetric restriction t = s (so sqrt(s_i t_i) = s_i) and u_i aligned
// against z_i (u_i = -sign(c_i) v_i), which makes every W constraint and the
// pairing linear.  Scale is fixed by sum s + sum v = 1.
inline lp::Problem witness_lp(const std::array<Rational, 4>& a, const std::array<Rational, 4>& abs_c,
                              const DualCone& dual) {
  lp::Problem p;
  p.nvars = 8;  // s0..s3, v0..v3
  for (const DualAtom& atom : dual.atoms()) {
    switch (atom.kind) {
      case DualAtom::Kind::W1: {
        auto& row = p.add(lp::Rel::Ge, Rational(0));
        row.coef[atom.p.i] = 1;
        row.coef[atom.p.j] = 1;
        row.coef[4 + atom.p.i] = -1;
        row.coef[4 + atom.p.j] = -1;
        break;
      }
      case DualAtom::Kind::W2: {
        auto& r1 = p.add(lp::Rel::Ge, Rational(0));
        for (int k = 0; k < 4; ++k)
          if (k != atom.p.j) r1.coef[k] = 1;
        r1.coef[4 + atom.p.i] = -1;
        auto& r2 = p.add(lp::Rel::Ge, Rational(0));
        for (int k = 0; k < 4; ++k)
          if (k != atom.p.i) r2.coef[k] = 1;
        r2.coef[4 + atom.p.j] = -1;
        break;
      }
      case DualAtom::Kind::W3: {
        auto& row = p.add(lp::Rel::Ge, Rational(0));
        for (int k = 0; k < 4; ++k) {
          row.coef[k] = 1;
          row.coef[4 + k] = -1;
        }
        break;
      }
    }
  }
  auto& norm = p.add(lp::Rel::Eq, Rational(1));
  for (int k = 0; k < 8; ++k) norm.coef[k] = 1;
  p.objective.assign(8, Rational(0));
  for (int k = 0; k < 4; ++k) {
    p.objective[k] = 2 * a[k];
    p.objective[4 + k] = -2 * abs_c[k];
  }
  return p;
}

}  // namespace detail

// Witness search certifying m outside a cone whose dual is in the catalog.
// Tries the finite pair-witness family first, then (for GHZ diagonal
// targets) the exact LP over GHZ-diagonal witnesses.  A zero optimum is
// inconclusive, never a certificate.
template <class S>
std::optional<CertifiedWitness<S>> certify_out(const XMat<S>& m, const ConeExpr& cone,
                                               const Context<S>& ctx) {
  ConeExpr norm = normalize(cone);
  auto dual = DualCone::dual_of(norm);
  if (!dual) throw UnsupportedCone("no dual characterization for " + expr_str(norm));
  auto st = XState<S>::make(m, ctx);
  if (!st) throw NotAState("certify_out requires a state");

  // (1) the finite family of proof witnesses.
  for (PairIndex p : kAllPairs) {
    for (PairIndex q : kAllPairs) {
      XMat<S> body;
      try {
        body = construct_pair_witness(*st, p, q, ctx);
      } catch (const InexactValue&) {
        continue;  // exact mode with irrational weights; LP path still applies
      }
      WitnessEval<S> we(body);
      if (member_dual(we, *dual, ctx).kind == Membership::Out) continue;
      S pv = pairing(body, m);
      if (ctx.sign(pv) == Sign::Negative)
        return CertifiedWitness<S>{Witness<S>{body, *dual}, pv};
    }
  }

  // (2) LP over GHZ-diagonal witnesses for GHZ-diagonal states.
  auto g = GhzDiagonal<S>::from_xmat(m);
  if (!g) return std::nullopt;
  std::array<Rational, 4> a{}, abs_c{};
  std::array<int, 4> sign_c{};
  for (int i = 0; i < 4; ++i) {
    Rational ar(0), cr(0);
    if constexpr (num::is_exact_v<S>) {
      ar = g->a[i];
      cr = g->c[i];
    } else {
      ar = Rational(g->a[i]);
      cr = Rational(g->c[i]);
    }
    a[i] = ar;
    abs_c[i] = cr < 0 ? Rational(-cr) : cr;
    sign_c[i] = cr < 0 ? -1 : 1;
  }
  lp::Result res = lp::minimize(detail::witness_lp(a, abs_c, *dual));
  if (res.status != lp::Status::Optimal) throw Error("witness LP must be feasible and bounded");
  if (!(res.value < 0)) return std::nullopt;
  XMat<S> body;
  for (int i = 0; i < 4; ++i) {
    S si, vi;
    if constexpr (num::is_exact_v<S>) {
      si = res.x[i];
      vi = res.x[4 + i];
    } else {
      si = num::to_double(res.x[i]);
      vi = num::to_double(res.x[4 + i]);
    }
    body.a[i] = si;
    body.b[i] = si;
    body.z[i] = Cx<S>(sign_c[i] < 0 ? vi : S(-vi));
  }
  S pv = pairing(body, m);
  return CertifiedWitness<S>{Witness<S>{body, *dual}, pv};
}

template <class S>
std::optional<CertifiedWitness<S>> certify_out(const XMat<S>& m, ConeTag tag, const Context<S>& ctx) {
  return certify_out(m, tag_expr(tag), ctx);
}

}  // namespace xsep
