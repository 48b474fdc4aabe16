#pragma once

#include <cstddef>
#include <vector>

#include "xsep/xmatrix.hpp"

namespace xsep {

// Dense square complex matrix, row-major.  The oracle paths work on these;
// everything else stays in the X-shaped encoding.
template <class S>
class Dense {
 public:
  Dense() = default;
  explicit Dense(std::size_t n) : n_(n), e_(n * n) {}

  std::size_t size() const { return n_; }
  Cx<S>& at(std::size_t r, std::size_t c) { return e_[r * n_ + c]; }
  const Cx<S>& at(std::size_t r, std::size_t c) const { return e_[r * n_ + c]; }

  friend bool operator==(const Dense& x, const Dense& y) { return x.n_ == y.n_ && x.e_ == y.e_; }

 private:
  std::size_t n_ = 0;
  std::vector<Cx<S>> e_;
};

template <class S>
bool is_hermitian(const Dense<S>& m, const Context<S>& ctx) {
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = r; c < m.size(); ++c) {
      const Cx<S>& x = m.at(r, c);
      const Cx<S>& y = m.at(c, r);
      if (ctx.sign(x.re - y.re) != Sign::Zero || ctx.sign(x.im + y.im) != Sign::Zero) return false;
    }
  return true;
}

// 8x8 materialization: a on diagonal rows 0..3, b reversed on rows 4..7,
// z_i at (i-1, 8-i) with conjugates below.
template <class S>
Dense<S> dense(const XMat<S>& m) {
  Dense<S> d(8);
  for (int i = 0; i < 4; ++i) {
    d.at(i, i) = Cx<S>(m.a[i]);
    d.at(7 - i, 7 - i) = Cx<S>(m.b[i]);
    d.at(i, 7 - i) = m.z[i];
    d.at(7 - i, i) = m.z[i].conj();
  }
  return d;
}

// X-part extraction (diagonal + anti-diagonal), the GHZ-basis dephasing that
// turns the closed-form criteria into necessary conditions for general
// states.  Identity on X-shaped input.
template <class S>
XMat<S> ghz_twirl_xpart(const Dense<S>& d, const Context<S>& ctx) {
  if (d.size() != 8) throw BadDims("ghz_twirl_xpart expects an 8x8 matrix");
  if (!is_hermitian(d, ctx)) throw NotSelfAdjoint();
  XMat<S> m;
  for (int i = 0; i < 4; ++i) {
    m.a[i] = d.at(i, i).re;
    m.b[i] = d.at(7 - i, 7 - i).re;
    m.z[i] = d.at(i, 7 - i);
  }
  return m;
}

}  // namespace xsep
