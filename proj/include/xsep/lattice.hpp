#pragma once

#include <optional>
#include <string>
#include <vector>

#include "xsep/cones.hpp"
#include "xsep/expr.hpp"
#include "xsep/oracle.hpp"
#include "xsep/slice.hpp"
#include "xsep/witness.hpp"

namespace xsep {

// Verdict for an arbitrary lattice word.  IN carries a closed-form match, a
// catalog subset, or an explicit decomposition; OUT carries a closed-form
// match, a catalog superset, or a witness.  Words the catalog cannot bound
// conclusively come back UNKNOWN with the bounds that were tried.
template <class S>
struct EvalResult {
  enum class Outcome { In, Out, Unknown } outcome = Outcome::Unknown;
  std::optional<Verdict<S>> closed_form;
  std::optional<CertifiedWitness<S>> witness;
  std::optional<Decomposition<S>> decomposition;
  std::string via;  // closed form name, or the bounding catalog element
  std::vector<std::string> upper_bounds, lower_bounds;

  bool boundary() const {
    return closed_form && closed_form->kind == Membership::Boundary;
  }
};

namespace detail {

inline bool join_of_catalog_parts(const ConeExpr& e, std::vector<ConeTag>& parts) {
  if (e.kind != ConeExpr::Kind::Join) return false;
  for (const ConeExpr& c : e.children) {
    std::vector<int> gens;
    if (c.kind == ConeExpr::Kind::Gen) {
      gens.push_back(c.gen);
    } else if (c.kind == ConeExpr::Kind::Meet) {
      for (const ConeExpr& gc : c.children) {
        if (gc.kind != ConeExpr::Kind::Gen) return false;
        gens.push_back(gc.gen);
      }
    } else {
      return false;
    }
    std::sort(gens.begin(), gens.end());
    if (gens == std::vector<int>{0}) parts.push_back(ConeTag::A);
    else if (gens == std::vector<int>{1}) parts.push_back(ConeTag::B);
    else if (gens == std::vector<int>{2}) parts.push_back(ConeTag::C);
    else if (gens == std::vector<int>{0, 1}) parts.push_back(ConeTag::AmB);
    else if (gens == std::vector<int>{1, 2}) parts.push_back(ConeTag::BmC);
    else if (gens == std::vector<int>{0, 2}) parts.push_back(ConeTag::CmA);
    else if (gens == std::vector<int>{0, 1, 2}) parts.push_back(ConeTag::AmBmC);
    else return false;
  }
  return true;
}

}  // namespace detail

// Evaluate a lattice word on a state: closed form when the normalized word
// is in the catalog; otherwise certificate searches bracketed by the
// catalog cones comparable to the word in the free-lattice order.
template <class S>
EvalResult<S> evaluate(const XMat<S>& m, const ConeExpr& e, const Context<S>& ctx) {
  EvalResult<S> res;
  ConeExpr norm = normalize(e);
  auto st = XState<S>::make(m, ctx);
  if (!st) {
    res.outcome = EvalResult<S>::Outcome::Out;
    res.via = "not-a-state";
    return res;
  }

  std::vector<SAtom> atoms;
  if (closed_form_atoms(norm, atoms)) {
    Verdict<S> v = eval_requirements(*st, atoms, ctx);
    res.closed_form = v;
    res.via = expr_str(norm);
    res.outcome = v.kind == Membership::Out ? EvalResult<S>::Outcome::Out : EvalResult<S>::Outcome::In;
    return res;
  }

  bool bound_out = false, bound_in = false;
  for (ConeTag tag : kAllConeTags) {
    ConeExpr te = normalize(tag_expr(tag));
    if (free_le(norm, te)) {
      res.upper_bounds.push_back(cone_tag_name(tag));
      if (!bound_out && member(*st, tag, ctx).kind == Membership::Out) {
        bound_out = true;
        res.via = std::string("superset ") + cone_tag_name(tag) + " excludes the state";
      }
    }
    if (free_le(te, norm)) {
      res.lower_bounds.push_back(cone_tag_name(tag));
      if (!bound_in && member(*st, tag, ctx).kind != Membership::Out) {
        bound_in = true;
        res.via = std::string("subset ") + cone_tag_name(tag) + " contains the state";
      }
    }
  }
  if (bound_in && bound_out) throw Error("contradictory catalog bounds for " + expr_str(norm));

  try {
    res.witness = certify_out(m, norm, ctx);
  } catch (const UnsupportedCone&) {
  }
  std::vector<ConeTag> parts;
  if (detail::join_of_catalog_parts(norm, parts)) res.decomposition = decompose_join(m, parts, ctx);

  if (res.witness && res.decomposition)
    throw Error("witness and decomposition certificates coexist for " + expr_str(norm));
  if (bound_out || res.witness) {
    if (bound_in || res.decomposition) throw Error("contradictory certificates for " + expr_str(norm));
    res.outcome = EvalResult<S>::Outcome::Out;
    if (res.witness && res.via.empty()) res.via = "witness";
    return res;
  }
  if (bound_in || res.decomposition) {
    res.outcome = EvalResult<S>::Outcome::In;
    if (res.decomposition && res.via.empty()) res.via = "decomposition";
    return res;
  }
  res.outcome = EvalResult<S>::Outcome::Unknown;
  return res;
}

template <class S>
EvalResult<S> evaluate(const XMat<S>& m, const std::string& expr_text, const Context<S>& ctx) {
  return evaluate(m, parse_expr(expr_text), ctx);
}

// Both distributive inequalities evaluated on one state; `separates` means
// the state lies in the right side but outside the left side.
template <class S>
struct DistributivityReport {
  struct Side {
    std::string expr;
    EvalResult<S> result;
  };
  // (A&B)|(A&C) <= A&(B|C)
  Side first_left, first_right;
  bool separates_first = false;
  // B|(C&A) <= (B|C)&(B|A)
  Side second_left, second_right;
  bool separates_second = false;
};

template <class S>
DistributivityReport<S> check_distributivity(const XMat<S>& m, const Context<S>& ctx) {
  DistributivityReport<S> rep;
  auto run = [&](const char* text) {
    typename DistributivityReport<S>::Side s;
    s.expr = text;
    s.result = evaluate(m, parse_expr(text), ctx);
    return s;
  };
  rep.first_left = run("(A&B)|(A&C)");
  rep.first_right = run("A&(B|C)");
  rep.second_left = run("B|(C&A)");
  rep.second_right = run("(B|C)&(B|A)");
  using O = typename EvalResult<S>::Outcome;
  rep.separates_first =
      rep.first_right.result.outcome == O::In && rep.first_left.result.outcome == O::Out;
  rep.separates_second =
      rep.second_right.result.outcome == O::In && rep.second_left.result.outcome == O::Out;
  return rep;
}

// Modularity probe along rho_t: the chain
//   (A&B)|(A&C) <= A&(B|(C&A)) <= A&(B|C)
// collapses at the left link iff t <= 3/4.
template <class S>
struct ModularityReport {
  S t;
  EvalResult<S> middle;      // A&(B|(C&A)), closed form
  EvalResult<S> left;        // (A&B)|(A&C), witness/decomposition
  S witness_pairing;         // pairing of the fixed separating witness
  bool strictly_between = false;
};

template <class S>
ModularityReport<S> check_modularity(const S& t, const Context<S>& ctx) {
  ModularityReport<S> rep;
  rep.t = t;
  XMat<S> m = rho_modular(t);
  rep.middle = evaluate(m, parse_expr("A&(B|(C&A))"), ctx);
  rep.left = evaluate(m, parse_expr("(A&B)|(A&C)"), ctx);
  rep.witness_pairing = pairing(modularity_witness<S>(), m);
  using O = typename EvalResult<S>::Outcome;
  rep.strictly_between = rep.middle.outcome == O::In && rep.left.outcome == O::Out;
  return rep;
}

}  // namespace xsep
