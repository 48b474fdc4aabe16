#pragma once

#include <string>

#include "xsep/scalar.hpp"

namespace xsep {

enum class Sign { Negative, Zero, Positive };

enum class Membership { Out, Boundary, In };

inline const char* to_string(Membership m) {
  switch (m) {
    case Membership::Out: return "OUT";
    case Membership::Boundary: return "BOUNDARY";
    default: return "IN";
  }
}

// Evaluation context: ExactRational is Context<Rational> (tol = 0),
// Float(tolerance) is Context<double>.
template <class S>
struct Context {
  S tol = num::default_tol<S>();

  Sign sign(const S& x) const {
    if (x > tol) return Sign::Positive;
    if (x < -tol) return Sign::Negative;
    return Sign::Zero;
  }

  Membership membership(const S& margin) const {
    switch (sign(margin)) {
      case Sign::Positive: return Membership::In;
      case Sign::Negative: return Membership::Out;
      default: return Membership::Boundary;
    }
  }
};

// Tri-valued verdict with the minimum margin over the binding inequality set
// and the name of the inequality attaining it.
template <class S>
struct Verdict {
  Membership kind;
  S margin;
  std::string binding;

  bool in_closure() const { return kind != Membership::Out; }
};

}  // namespace xsep
