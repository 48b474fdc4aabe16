#pragma once

#include <algorithm>
#include <array>
#include <span>
#include <string>
#include <vector>

#include "xsep/xmatrix.hpp"

namespace xsep {

// Unordered pair {i, j} of anti-diagonal slots, 0-based internally,
// 1-based in display strings to match the usual matrix indexing.
struct PairIndex {
  int i;
  int j;

  constexpr PairIndex(int i_, int j_) : i(i_ < j_ ? i_ : j_), j(i_ < j_ ? j_ : i_) {}

  constexpr bool operator==(const PairIndex&) const = default;

  constexpr PairIndex complement() const {
    int k = -1, l = -1;
    for (int x = 0; x < 4; ++x)
      if (x != i && x != j) (k < 0 ? k : l) = x;
    return {k, l};
  }

  std::string str() const { return "{" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "}"; }
};

inline constexpr std::array<PairIndex, 6> kAllPairs = {
    PairIndex{0, 1}, PairIndex{0, 2}, PairIndex{0, 3},
    PairIndex{1, 2}, PairIndex{1, 3}, PairIndex{2, 3}};

namespace pairs {
inline constexpr PairIndex p12{0, 1}, p13{0, 2}, p14{0, 3}, p23{1, 2}, p24{1, 3}, p34{2, 3};
}  // namespace pairs

// S1[i,j]: min{sqrt(a_i b_i), sqrt(a_j b_j)} >= max{|z_i|, |z_j|}
template <class S>
S s1_margin(const XState<S>& m, PairIndex p) {
  return std::min(m.rp()[p.i], m.rp()[p.j]) - std::max(m.az()[p.i], m.az()[p.j]);
}

// S2[i,j] with {k,l} the complementary pair; equal to S2[k,l] by construction.
template <class S>
S s2_margin(const XState<S>& m, PairIndex p) {
  PairIndex q = p.complement();
  S lp = m.rp()[p.i] + m.rp()[p.j], lq = m.rp()[q.i] + m.rp()[q.j];
  S rp = m.az()[p.i] + m.az()[p.j], rq = m.az()[q.i] + m.az()[q.j];
  return std::min(lp, lq) - std::max(rp, rq);
}

// S3 row i: sum_{j != i} sqrt(a_j b_j) >= |z_i|
template <class S>
S s3_row_margin(const XState<S>& m, int i) {
  S acc(0);
  for (int j = 0; j < 4; ++j)
    if (j != i) acc += m.rp()[j];
  return acc - m.az()[i];
}

template <class S>
S s3_margin(const XState<S>& m) {
  S best = s3_row_margin(m, 0);
  for (int i = 1; i < 4; ++i) best = std::min(best, s3_row_margin(m, i));
  return best;
}

// S4[i,j|k,l] for arbitrary pairs; holds automatically when p == q and
// reduces to S2 when the pairs are disjoint.
template <class S>
S s4_margin(const XState<S>& m, PairIndex p, PairIndex q) {
  S lp = m.rp()[p.i] + m.rp()[p.j], lq = m.rp()[q.i] + m.rp()[q.j];
  S rp = m.az()[p.i] + m.az()[p.j], rq = m.az()[q.i] + m.az()[q.j];
  return std::min(lp, lq) - std::max(rp, rq);
}

enum class ConeTag {
  A, B, C,
  AmB, BmC, CmA, AmBmC,
  AjB, BjC, CjA, AjBjC,
  AjBmC,  // A | (B & C)
  BjCmA,  // B | (C & A)
  CjAmB,  // C | (A & B)
};

inline constexpr std::array<ConeTag, 14> kAllConeTags = {
    ConeTag::A,     ConeTag::B,     ConeTag::C,     ConeTag::AmB,  ConeTag::BmC,
    ConeTag::CmA,   ConeTag::AmBmC, ConeTag::AjB,   ConeTag::BjC,  ConeTag::CjA,
    ConeTag::AjBjC, ConeTag::AjBmC, ConeTag::BjCmA, ConeTag::CjAmB};

inline const char* cone_tag_name(ConeTag t) {
  switch (t) {
    case ConeTag::A: return "A";
    case ConeTag::B: return "B";
    case ConeTag::C: return "C";
    case ConeTag::AmB: return "A&B";
    case ConeTag::BmC: return "B&C";
    case ConeTag::CmA: return "C&A";
    case ConeTag::AmBmC: return "A&B&C";
    case ConeTag::AjB: return "A|B";
    case ConeTag::BjC: return "B|C";
    case ConeTag::CjA: return "C|A";
    case ConeTag::AjBjC: return "A|B|C";
    case ConeTag::AjBmC: return "A|(B&C)";
    case ConeTag::BjCmA: return "B|(C&A)";
    default: return "C|(A&B)";
  }
}

// S1 pairs of the basic cones: a cut's slots pair up exactly as the partial
// transpose across that cut permutes the anti-diagonal.
inline constexpr std::array<PairIndex, 2> gen_s1_pairs(int gen) {
  switch (gen) {
    case 0: return {pairs::p14, pairs::p23};  // A
    case 1: return {pairs::p13, pairs::p24};  // B
    default: return {pairs::p12, pairs::p34};  // C
  }
}

// S2 pair characterizing the join of the two cones other than `gen`.
inline constexpr PairIndex join_s2_pair(int gen) {
  switch (gen) {
    case 0: return pairs::p14;  // B|C
    case 1: return pairs::p13;  // C|A
    default: return pairs::p12;  // A|B
  }
}

// Theorem pair family for gen | (meet of the other two).
inline constexpr std::array<PairIndex, 4> s4_pair_family(int gen) {
  switch (gen) {
    case 0: return {pairs::p12, pairs::p13, pairs::p24, pairs::p34};  // A|(B&C)
    case 1: return {pairs::p12, pairs::p14, pairs::p23, pairs::p34};  // B|(C&A)
    default: return {pairs::p13, pairs::p14, pairs::p23, pairs::p24};  // C|(A&B)
  }
}

// One atomic S-inequality; cone membership is a conjunction of these.
struct SAtom {
  enum class Kind { S1, S2, S3Row, S4, StateSlot } kind;
  PairIndex p{0, 1};
  PairIndex q{0, 1};
  int row = 0;

  static SAtom s1(PairIndex p) { return {Kind::S1, p, p, 0}; }
  static SAtom s2(PairIndex p) { return {Kind::S2, p, p, 0}; }
  static SAtom s3(int row) { return {Kind::S3Row, pairs::p12, pairs::p12, row}; }
  static SAtom s4(PairIndex p, PairIndex q) { return {Kind::S4, p, q, 0}; }
  static SAtom state_slot(int i) { return {Kind::StateSlot, pairs::p12, pairs::p12, i}; }

  std::string name() const {
    switch (kind) {
      case Kind::S1: return "S1" + p.str();
      case Kind::S2: return "S2" + p.str();
      case Kind::S3Row: return "S3[" + std::to_string(row + 1) + "]";
      case Kind::S4: return "S4[" + p.str() + "|" + q.str() + "]";
      default: return "state[" + std::to_string(row + 1) + "]";
    }
  }
};

template <class S>
S atom_margin(const XState<S>& m, const SAtom& atom) {
  switch (atom.kind) {
    case SAtom::Kind::S1: return s1_margin(m, atom.p);
    case SAtom::Kind::S2: return s2_margin(m, atom.p);
    case SAtom::Kind::S3Row: return s3_row_margin(m, atom.row);
    case SAtom::Kind::S4: return s4_margin(m, atom.p, atom.q);
    default: return m.rp()[atom.row] - m.az()[atom.row];
  }
}

inline void append_gen_s1(std::vector<SAtom>& out, int gen) {
  for (PairIndex p : gen_s1_pairs(gen)) out.push_back(SAtom::s1(p));
}

inline void append_s4_family(std::vector<SAtom>& out, int gen) {
  auto fam = s4_pair_family(gen);
  for (int x = 0; x < 4; ++x)
    for (int y = x + 1; y < 4; ++y) out.push_back(SAtom::s4(fam[x], fam[y]));
}

inline const std::vector<SAtom>& requirement_set(ConeTag tag) {
  static const std::array<std::vector<SAtom>, 14> table = [] {
    std::array<std::vector<SAtom>, 14> t;
    auto at = [](std::array<std::vector<SAtom>, 14>& a, ConeTag tg) -> std::vector<SAtom>& {
      return a[static_cast<int>(tg)];
    };
    append_gen_s1(at(t, ConeTag::A), 0);
    append_gen_s1(at(t, ConeTag::B), 1);
    append_gen_s1(at(t, ConeTag::C), 2);
    for (int g : {0, 1}) append_gen_s1(at(t, ConeTag::AmB), g);
    for (int g : {1, 2}) append_gen_s1(at(t, ConeTag::BmC), g);
    for (int g : {2, 0}) append_gen_s1(at(t, ConeTag::CmA), g);
    for (int g : {0, 1, 2}) append_gen_s1(at(t, ConeTag::AmBmC), g);
    at(t, ConeTag::AjB).push_back(SAtom::s2(join_s2_pair(2)));
    at(t, ConeTag::BjC).push_back(SAtom::s2(join_s2_pair(0)));
    at(t, ConeTag::CjA).push_back(SAtom::s2(join_s2_pair(1)));
    for (int r = 0; r < 4; ++r) at(t, ConeTag::AjBjC).push_back(SAtom::s3(r));
    append_s4_family(at(t, ConeTag::AjBmC), 0);
    append_s4_family(at(t, ConeTag::BjCmA), 1);
    append_s4_family(at(t, ConeTag::CjAmB), 2);
    return t;
  }();
  return table[static_cast<int>(tag)];
}

// All cones contain only states, and the state-cone boundary is part of
// every cone's boundary: points with some sqrt(a_i b_i) = |z_i| must report
// BOUNDARY even when the tag's own inequalities are slack.  The four slot
// margins are therefore always part of the conjunction.
template <class S>
Verdict<S> eval_requirements(const XState<S>& m, std::span<const SAtom> atoms, const Context<S>& ctx) {
  Verdict<S> v{Membership::In, S(0), ""};
  bool first = true;
  auto feed = [&](const SAtom& atom) {
    S margin = atom_margin(m, atom);
    if (first || margin < v.margin) {
      v.margin = margin;
      v.binding = atom.name();
      first = false;
    }
  };
  for (int i = 0; i < 4; ++i) feed(SAtom::state_slot(i));
  for (const SAtom& atom : atoms) feed(atom);
  v.kind = ctx.membership(v.margin);
  return v;
}

// Most negative validity margin; used to report OUT for non-states.
// Exact mode reports the squared-form margin (sign-faithful).
template <class S>
S worst_validity_margin(const XMat<S>& m, const Context<S>& ctx) {
  S worst(0);
  for (int i = 0; i < 4; ++i) {
    worst = std::min(worst, m.a[i]);
    worst = std::min(worst, m.b[i]);
    if constexpr (num::is_exact_v<S>) {
      worst = std::min(worst, S(m.a[i] * m.b[i] - m.z[i].norm2()));
    } else {
      S prod = std::max(m.a[i], S(0)) * std::max(m.b[i], S(0));
      worst = std::min(worst, num::sqrt_of(prod) - abs_of(m.z[i]));
    }
  }
  (void)ctx;
  return worst;
}

// Membership in every cone the catalog characterizes in closed form.
// Non-states are OUT by definition (cones contain only states).
template <class S>
Verdict<S> member(const XMat<S>& m, ConeTag tag, const Context<S>& ctx) {
  auto st = XState<S>::make(m, ctx);
  if (!st) return Verdict<S>{Membership::Out, worst_validity_margin(m, ctx), "not-a-state"};
  return eval_requirements(*st, requirement_set(tag), ctx);
}

template <class S>
Verdict<S> member(const XState<S>& st, ConeTag tag, const Context<S>& ctx) {
  return eval_requirements(st, requirement_set(tag), ctx);
}

// lambda_5..lambda_8 and t_1..t_4 of the GHZ-diagonal full-separability test.
template <class S>
struct FullSepData {
  std::array<S, 4> lambda{};  // lambda_5..lambda_8
  std::array<S, 4> t{};       // t_1..t_4
};

template <class S>
FullSepData<S> full_sep_data(const std::array<S, 4>& c) {
  const S &c1 = c[0], &c2 = c[1], &c3 = c[2], &c4 = c[3];
  FullSepData<S> d;
  d.lambda[0] = S(2) * (c1 + c2 + c3 + c4);
  d.lambda[1] = S(2) * (-c1 - c2 + c3 + c4);
  d.lambda[2] = S(2) * (-c1 + c2 - c3 + c4);
  d.lambda[3] = S(2) * (-c1 + c2 + c3 - c4);
  S q1 = c1 * c1, q2 = c2 * c2, q3 = c3 * c3, q4 = c4 * c4;
  d.t[0] = c1 * (-q1 + q2 + q3 + q4) - S(2) * c2 * c3 * c4;
  d.t[1] = c2 * (q1 - q2 + q3 + q4) - S(2) * c1 * c3 * c4;
  d.t[2] = c3 * (q1 + q2 - q3 + q4) - S(2) * c1 * c2 * c4;
  d.t[3] = c4 * (q1 + q2 + q3 - q4) - S(2) * c1 * c2 * c3;
  return d;
}

// The three strict branch conditions; any exact zero falls to the PPT branch.
template <class S>
bool full_sep_branch_holds(const FullSepData<S>& d, const Context<S>& ctx) {
  const auto& l = d.lambda;
  const auto& t = d.t;
  S cond1 = l[0] * l[1] * l[2] * l[3];
  S cond2 = t[0] * t[3] * l[1] * l[2];
  S cond3 = t[1] * t[2] * l[0] * l[3];
  return ctx.sign(cond1) == Sign::Positive && ctx.sign(cond2) == Sign::Negative &&
         ctx.sign(cond3) == Sign::Positive;
}

// Squared right side of the branch inequality:
// ((l5l6+l7l8)(l5l7+l6l8)(l5l8+l6l7)) / (64 * l5l6l7l8).
// Only meaningful on the branch; throws if the radicand is negative there.
template <class S>
S full_sep_rhs_squared(const FullSepData<S>& d) {
  const auto& l = d.lambda;
  S den = S(64) * l[0] * l[1] * l[2] * l[3];
  S numr = (l[0] * l[1] + l[2] * l[3]) * (l[0] * l[2] + l[1] * l[3]) * (l[0] * l[3] + l[1] * l[2]);
  if (numr < S(0)) throw Error("full separability radicand is negative on the branch");
  return numr / den;
}

// Full separability of a GHZ diagonal state: the branch inequality when the
// three conditions hold strictly, otherwise PPT (= A&B&C for X-states).
template <class S>
Verdict<S> fully_separable_ghz(const GhzDiagonal<S>& g, const Context<S>& ctx) {
  XMat<S> m = g.to_xmat();
  auto st = XState<S>::make(m, ctx);
  if (!st) throw NotAState("fully_separable_ghz requires a state");
  FullSepData<S> d = full_sep_data(g.c);
  if (!full_sep_branch_holds(d, ctx)) return member(*st, ConeTag::AmBmC, ctx);
  S min_a = *std::min_element(g.a.begin(), g.a.end());
  S rhs2 = full_sep_rhs_squared(d);
  S margin;
  if constexpr (num::is_exact_v<S>) {
    // min_a >= 0 for states, so compare squares.
    margin = min_a * min_a - rhs2;
  } else {
    margin = min_a - num::sqrt_of(std::max(rhs2, S(0)));
  }
  Verdict<S> v{ctx.membership(margin), margin, "fullsep-branch"};
  // State-boundary points are boundary points of the fully separable cone.
  Verdict<S> slots = eval_requirements(*st, std::span<const SAtom>{}, ctx);
  if (v.kind != Membership::Out && slots.kind == Membership::Boundary) {
    v.kind = Membership::Boundary;
  }
  return v;
}

}  // namespace xsep
