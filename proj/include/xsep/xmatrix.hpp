#pragma once

#include <array>
#include <optional>

#include "xsep/complex.hpp"
#include "xsep/context.hpp"
#include "xsep/errors.hpp"

namespace xsep {

// Self-adjoint X-shaped three qubit matrix X(a, b, z):
// diagonal (a1, a2, a3, a4, b4, b3, b2, b1), anti-diagonal (z1..z4) with
// conjugates below.  Anti-diagonal slot i pairs the basis rows
// (000,111), (001,110), (010,101), (011,100) in lexicographic order.
// Self-adjointness is automatic in this encoding; no positivity is implied.
template <class S>
struct XMat {
  std::array<S, 4> a{};
  std::array<S, 4> b{};
  std::array<Cx<S>, 4> z{};

  bool ghz_diagonal() const {
    for (int i = 0; i < 4; ++i)
      if (!(a[i] == b[i]) || !z[i].is_real()) return false;
    return true;
  }

  friend XMat operator+(const XMat& x, const XMat& y) {
    XMat r;
    for (int i = 0; i < 4; ++i) {
      r.a[i] = x.a[i] + y.a[i];
      r.b[i] = x.b[i] + y.b[i];
      r.z[i] = x.z[i] + y.z[i];
    }
    return r;
  }
  friend XMat operator-(const XMat& x, const XMat& y) {
    XMat r;
    for (int i = 0; i < 4; ++i) {
      r.a[i] = x.a[i] - y.a[i];
      r.b[i] = x.b[i] - y.b[i];
      r.z[i] = x.z[i] - y.z[i];
    }
    return r;
  }
  friend XMat operator*(const S& c, const XMat& x) {
    XMat r;
    for (int i = 0; i < 4; ++i) {
      r.a[i] = c * x.a[i];
      r.b[i] = c * x.b[i];
      r.z[i] = c * x.z[i];
    }
    return r;
  }
  friend bool operator==(const XMat& x, const XMat& y) {
    return x.a == y.a && x.b == y.b && x.z == y.z;
  }
};

// GHZ diagonal matrix: b = a and real anti-diagonal c.
template <class S>
struct GhzDiagonal {
  std::array<S, 4> a{};
  std::array<S, 4> c{};

  XMat<S> to_xmat() const {
    XMat<S> m;
    m.a = a;
    m.b = a;
    for (int i = 0; i < 4; ++i) m.z[i] = Cx<S>(c[i]);
    return m;
  }

  static std::optional<GhzDiagonal> from_xmat(const XMat<S>& m) {
    if (!m.ghz_diagonal()) return std::nullopt;
    GhzDiagonal g;
    g.a = m.a;
    for (int i = 0; i < 4; ++i) g.c[i] = m.z[i].re;
    return g;
  }
};

template <class S>
XMat<S> ghz_xmat(const std::array<S, 4>& a, const std::array<S, 4>& c) {
  return GhzDiagonal<S>{a, c}.to_xmat();
}

enum class Validity { State, SelfAdjointOnly };

// X(a,b,z) is a state iff a_i, b_i >= 0 and sqrt(a_i b_i) >= |z_i|.
// The modulus comparison is done in squared form, so the check is total in
// exact mode as well.
template <class S>
Validity validate(const XMat<S>& m, const Context<S>& ctx) {
  for (int i = 0; i < 4; ++i) {
    if (ctx.sign(m.a[i]) == Sign::Negative || ctx.sign(m.b[i]) == Sign::Negative)
      return Validity::SelfAdjointOnly;
  }
  for (int i = 0; i < 4; ++i) {
    if constexpr (num::is_exact_v<S>) {
      if (ctx.sign(m.a[i] * m.b[i] - m.z[i].norm2()) == Sign::Negative)
        return Validity::SelfAdjointOnly;
    } else {
      S prod = std::max(m.a[i], S(0)) * std::max(m.b[i], S(0));
      if (ctx.sign(num::sqrt_of(prod) - abs_of(m.z[i])) == Sign::Negative)
        return Validity::SelfAdjointOnly;
    }
  }
  return Validity::State;
}

// (sqrt(a_i b_i))_i.  Exact mode requires the products to be perfect squares
// (always true for GHZ diagonal input, where the value is a_i itself).
template <class S>
std::array<S, 4> root_products(const XMat<S>& m, const Context<S>& ctx) {
  std::array<S, 4> r{};
  for (int i = 0; i < 4; ++i) {
    if (ctx.sign(m.a[i]) == Sign::Negative || ctx.sign(m.b[i]) == Sign::Negative)
      throw NegativeDiagonal("root_products: a or b has a negative entry");
    if constexpr (num::is_exact_v<S>) {
      r[i] = num::sqrt_of(S(m.a[i] * m.b[i]));
    } else {
      r[i] = num::sqrt_of(std::max(m.a[i], S(0)) * std::max(m.b[i], S(0)));
    }
  }
  return r;
}

// <x, y> = Tr(y x^t) = sum_i (s_i a_i + t_i b_i + 2 Re(u_i z_i))
// for x = X(s,t,u), y = X(a,b,z).
template <class S>
S pairing(const XMat<S>& w, const XMat<S>& m) {
  S acc(0);
  for (int i = 0; i < 4; ++i) {
    acc += w.a[i] * m.a[i] + w.b[i] * m.b[i];
    acc += S(2) * (w.z[i].re * m.z[i].re - w.z[i].im * m.z[i].im);
  }
  return acc;
}

// A validated state with its root products and anti-diagonal moduli cached;
// every S-inequality is a function of these eight numbers.
template <class S>
class XState {
 public:
  static std::optional<XState> make(const XMat<S>& m, const Context<S>& ctx) {
    if (validate(m, ctx) != Validity::State) return std::nullopt;
    XState st;
    st.mat_ = m;
    st.rp_ = root_products(m, ctx);
    for (int i = 0; i < 4; ++i) st.az_[i] = abs_of(m.z[i]);
    return st;
  }

  const XMat<S>& mat() const { return mat_; }
  const std::array<S, 4>& rp() const { return rp_; }
  const std::array<S, 4>& az() const { return az_; }

 private:
  XState() = default;
  XMat<S> mat_;
  std::array<S, 4> rp_{};
  std::array<S, 4> az_{};
};

}  // namespace xsep
