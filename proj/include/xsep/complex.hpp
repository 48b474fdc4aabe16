#pragma once

#include "xsep/scalar.hpp"

namespace xsep {

// Complex number over the active scalar type, stored as (re, im).
template <class S>
struct Cx {
  S re{};
  S im{};

  Cx() = default;
  Cx(S r, S i) : re(std::move(r)), im(std::move(i)) {}
  explicit Cx(S r) : re(std::move(r)), im(S(0)) {}

  bool is_zero() const { return re == S(0) && im == S(0); }
  bool is_real() const { return im == S(0); }

  Cx conj() const { return {re, S(-im)}; }
  S norm2() const { return re * re + im * im; }

  friend Cx operator+(const Cx& x, const Cx& y) { return {S(x.re + y.re), S(x.im + y.im)}; }
  friend Cx operator-(const Cx& x, const Cx& y) { return {S(x.re - y.re), S(x.im - y.im)}; }
  friend Cx operator-(const Cx& x) { return {S(-x.re), S(-x.im)}; }
  friend Cx operator*(const Cx& x, const Cx& y) {
    return {S(x.re * y.re - x.im * y.im), S(x.re * y.im + x.im * y.re)};
  }
  friend Cx operator*(const S& c, const Cx& x) { return {S(c * x.re), S(c * x.im)}; }
  friend bool operator==(const Cx& x, const Cx& y) { return x.re == y.re && x.im == y.im; }
};

template <class S>
S abs_of(const Cx<S>& z) {
  return num::sqrt_of(z.norm2());
}

// z/|z| with the convention 0 -> 1, so phases are total.
template <class S>
Cx<S> unit_phase(const Cx<S>& z) {
  if (z.is_zero()) return Cx<S>(S(1));
  S m = abs_of(z);
  return {S(z.re / m), S(z.im / m)};
}

}  // namespace xsep
