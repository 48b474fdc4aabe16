#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "xsep/cones.hpp"
#include "xsep/witness.hpp"

namespace xsep {

// Seeded sample generators for the fuzz suites and the verify command.
class Sampler {
 private:
  std::mt19937_64 rng_;

 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  long long uniform_int(long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng_);
  }

  // Random rational in [0, 1] with the given denominator.
  Rational urational(long long denom = 1000) {
    return Rational(BigInt(uniform_int(0, denom)), BigInt(denom));
  }

  // Generic positive X-state: a, b uniform, |z_i| <= sqrt(a_i b_i).
  XMat<double> random_xstate() {
    XMat<double> m;
    for (int i = 0; i < 4; ++i) {
      m.a[i] = uniform(0.0, 1.0);
      m.b[i] = uniform(0.0, 1.0);
      double cap = std::sqrt(m.a[i] * m.b[i]);
      double r = uniform(0.0, 1.0) * cap;
      double th = uniform(0.0, 6.283185307179586);
      m.z[i] = Cx<double>(r * std::cos(th), r * std::sin(th));
    }
    return m;
  }

  XMat<double> random_xmat() {
    XMat<double> m;
    for (int i = 0; i < 4; ++i) {
      m.a[i] = uniform(-1.0, 1.0);
      m.b[i] = uniform(-1.0, 1.0);
      m.z[i] = Cx<double>(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
    }
    return m;
  }

  template <class S>
  XMat<S> random_ghz_state(long long denom = 120) {
    GhzDiagonal<S> g;
    for (int i = 0; i < 4; ++i) {
      Rational a = Rational(BigInt(uniform_int(0, denom)), BigInt(denom));
      Rational f = Rational(BigInt(uniform_int(-denom, denom)), BigInt(denom));
      Rational c = a * f;
      if constexpr (num::is_exact_v<S>) {
        g.a[i] = a;
        g.c[i] = c;
      } else {
        g.a[i] = num::to_double(a);
        g.c[i] = num::to_double(c);
      }
    }
    return g.to_xmat();
  }

  // Interior point of a triangle with rational vertices, via integer
  // barycentric weights (so the point is strictly inside).
  std::pair<Rational, Rational> triangle_interior(const std::array<std::pair<Rational, Rational>, 3>& tri,
                                                  long long scale = 1000) {
    long long w1 = uniform_int(1, scale), w2 = uniform_int(1, scale), w3 = uniform_int(1, scale);
    Rational W(BigInt(w1 + w2 + w3));
    Rational s = (Rational(w1) * tri[0].first + Rational(w2) * tri[1].first + Rational(w3) * tri[2].first) / W;
    Rational t = (Rational(w1) * tri[0].second + Rational(w2) * tri[1].second + Rational(w3) * tri[2].second) / W;
    return {s, t};
  }
};

namespace sampling {

// (lhs, rhs-at-unit-z-scale) of an S-atom, so shrinking z by
// lambda <= lhs/rhs restores the inequality.
template <class S>
std::pair<S, S> atom_lhs_rhs(const std::array<S, 4>& rp, const std::array<S, 4>& az, const SAtom& atom) {
  switch (atom.kind) {
    case SAtom::Kind::S1:
      return {std::min(rp[atom.p.i], rp[atom.p.j]), std::max(az[atom.p.i], az[atom.p.j])};
    case SAtom::Kind::S3Row: {
      S l(0);
      for (int j = 0; j < 4; ++j)
        if (j != atom.row) l += rp[j];
      return {l, az[atom.row]};
    }
    default: {
      PairIndex q = atom.kind == SAtom::Kind::S2 ? atom.p.complement() : atom.q;
      S lp = rp[atom.p.i] + rp[atom.p.j], lq = rp[q.i] + rp[q.j];
      S rhp = az[atom.p.i] + az[atom.p.j], rhq = az[q.i] + az[q.j];
      return {std::min(lp, lq), std::max(rhp, rhq)};
    }
  }
}

// Scale the anti-diagonal of a random state until every atom of the tag's
// requirement set holds; members of any closed-form cone can be drawn this
// way because z = 0 satisfies every S-inequality.
template <class S>
XMat<S> shrink_into(XMat<S> m, const std::vector<SAtom>& atoms, const Context<S>& ctx) {
  auto st = XState<S>::make(m, ctx);
  if (!st) throw Error("shrink_into expects a state");
  S scale(1);
  bool shrunk = false;
  for (const SAtom& atom : atoms) {
    auto [l, r] = atom_lhs_rhs(st->rp(), st->az(), atom);
    if (r > S(0) && l < scale * r) {
      scale = std::max(S(0), S(l / r));
      shrunk = true;
    }
  }
  if (shrunk)
    for (auto& z : m.z) z = scale * z;
  return m;
}

template <class S>
XMat<S> sample_in_cone(Sampler& smp, ConeTag tag, const Context<S>& ctx) {
  switch (tag) {
    case ConeTag::AjB:
      return sample_in_cone<S>(smp, ConeTag::A, ctx) + sample_in_cone<S>(smp, ConeTag::B, ctx);
    case ConeTag::BjC:
      return sample_in_cone<S>(smp, ConeTag::B, ctx) + sample_in_cone<S>(smp, ConeTag::C, ctx);
    case ConeTag::CjA:
      return sample_in_cone<S>(smp, ConeTag::C, ctx) + sample_in_cone<S>(smp, ConeTag::A, ctx);
    case ConeTag::AjBjC:
      return sample_in_cone<S>(smp, ConeTag::AjB, ctx) + sample_in_cone<S>(smp, ConeTag::C, ctx);
    case ConeTag::AjBmC:
      return sample_in_cone<S>(smp, ConeTag::A, ctx) + sample_in_cone<S>(smp, ConeTag::BmC, ctx);
    case ConeTag::BjCmA:
      return sample_in_cone<S>(smp, ConeTag::B, ctx) + sample_in_cone<S>(smp, ConeTag::CmA, ctx);
    case ConeTag::CjAmB:
      return sample_in_cone<S>(smp, ConeTag::C, ctx) + sample_in_cone<S>(smp, ConeTag::AmB, ctx);
    default: {
      XMat<S> m;
      if constexpr (num::is_exact_v<S>) {
        m = smp.random_ghz_state<S>();
      } else {
        m = smp.random_xstate();
      }
      return shrink_into(m, requirement_set(tag), ctx);
    }
  }
}

// Row margins of a W-atom as (lhs, rhs-at-unit-u-scale) pairs.
template <class S>
std::vector<std::pair<S, S>> dual_atom_rows(const std::array<S, 4>& rw, const std::array<S, 4>& au,
                                            const DualAtom& atom) {
  switch (atom.kind) {
    case DualAtom::Kind::W1:
      return {{rw[atom.p.i] + rw[atom.p.j], au[atom.p.i] + au[atom.p.j]}};
    case DualAtom::Kind::W2: {
      S total(0);
      for (int k = 0; k < 4; ++k) total += rw[k];
      return {{total - rw[atom.p.j], au[atom.p.i]}, {total - rw[atom.p.i], au[atom.p.j]}};
    }
    default: {
      S l(0), r(0);
      for (int k = 0; k < 4; ++k) {
        l += rw[k];
        r += au[k];
      }
      return {{l, r}};
    }
  }
}

// Random element of a catalog dual cone: nonnegative diagonal, anti-diagonal
// shrunk into the W-inequality set.
template <class S>
XMat<S> sample_in_dual(Sampler& smp, const DualCone& dual, const Context<S>& ctx) {
  XMat<S> w;
  std::array<S, 4> rw{}, au{};
  for (int i = 0; i < 4; ++i) {
    if constexpr (num::is_exact_v<S>) {
      S v = smp.urational();
      w.a[i] = v;
      w.b[i] = v;  // symmetric diagonal keeps sqrt(s t) rational
      w.z[i] = Cx<S>(S(smp.urational() * (smp.uniform_int(0, 1) ? S(1) : S(-1))));
      rw[i] = v;
    } else {
      w.a[i] = smp.uniform(0.0, 1.0);
      w.b[i] = smp.uniform(0.0, 1.0);
      double r = smp.uniform(0.0, 1.0), th = smp.uniform(0.0, 6.283185307179586);
      w.z[i] = Cx<double>(r * std::cos(th), r * std::sin(th));
      rw[i] = std::sqrt(w.a[i] * w.b[i]);
    }
    au[i] = abs_of(w.z[i]);
  }
  S scale(1);
  bool shrunk = false;
  for (const DualAtom& atom : dual.atoms()) {
    for (auto [l, r] : dual_atom_rows(rw, au, atom)) {
      if (r > S(0) && l < scale * r) {
        scale = std::max(S(0), S(l / r));
        shrunk = true;
      }
    }
  }
  if (shrunk)
    for (auto& z : w.z) z = scale * z;
  return w;
}

// The three triangles of R \ H1, each cut off by one H1 edge.
inline std::array<std::array<std::pair<Rational, Rational>, 3>, 3> gap_triangles() {
  auto q = [](long long n, long long d) { return Rational(BigInt(n), BigInt(d)); };
  using P = std::pair<Rational, Rational>;
  return {{
      {P{0, 1}, P{q(-2, 11), q(9, 11)}, P{q(2, 5), q(3, 5)}},
      {P{1, 0}, P{q(2, 5), q(3, 5)}, P{q(6, 7), q(-3, 7)}},
      {P{-1, 0}, P{q(-10, 13), q(3, 13)}, P{q(-6, 11), q(-3, 11)}},
  }};
}

}  // namespace sampling
}  // namespace xsep
