#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "xsep/cones.hpp"
#include "xsep/dense.hpp"
#include "xsep/linprog.hpp"

namespace xsep {

enum class Cut { A_BC, B_CA, C_AB };

inline constexpr std::array<Cut, 3> kAllCuts = {Cut::A_BC, Cut::B_CA, Cut::C_AB};

inline const char* cut_name(Cut c) {
  switch (c) {
    case Cut::A_BC: return "A-BC";
    case Cut::B_CA: return "B-CA";
    default: return "C-AB";
  }
}

// Basic biseparability cone across a cut.
inline ConeTag cone_of_cut(Cut c) {
  switch (c) {
    case Cut::A_BC: return ConeTag::A;
    case Cut::B_CA: return ConeTag::B;
    default: return ConeTag::C;
  }
}

// Transpose the tensor factor on the named side of the cut.  Index bits are
// (b1 b2 b3) with b1 the most significant (lexicographic order).
template <class S>
Dense<S> partial_transpose(const Dense<S>& m, Cut cut) {
  if (m.size() != 8) throw BadDims("partial_transpose expects an 8x8 matrix");
  int bit = cut == Cut::A_BC ? 4 : cut == Cut::B_CA ? 2 : 1;
  Dense<S> out(8);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) {
      int rb = (r & ~bit) | (c & bit);
      int cb = (c & ~bit) | (r & bit);
      out.at(r, c) = m.at(rb, cb);
    }
  return out;
}

namespace detail {

// Characteristic polynomial of a Hermitian matrix by Faddeev-LeVerrier;
// coefficients are exact rationals.  p(x) = x^n + c[n-1] x^(n-1) + ... + c[0].
inline std::vector<Rational> char_poly(const Dense<Rational>& m) {
  const std::size_t n = m.size();
  Dense<Rational> acc(n);  // running matrix M (A_k)
  std::vector<Rational> c(n, Rational(0));
  Dense<Rational> mk = m;
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      // mk = m * (prev + c_{n-k+1} I)
      Dense<Rational> tmp(n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t col = 0; col < n; ++col) {
          Cx<Rational> s{Rational(0), Rational(0)};
          for (std::size_t j = 0; j < n; ++j) s = s + m.at(r, j) * acc.at(j, col);
          tmp.at(r, col) = s;
        }
      mk = tmp;
    }
    Cx<Rational> tr{Rational(0), Rational(0)};
    for (std::size_t j = 0; j < n; ++j) tr = tr + mk.at(j, j);
    Rational ck = -tr.re / Rational(static_cast<long long>(k));
    c[n - k] = ck;
    acc = mk;
    for (std::size_t j = 0; j < n; ++j) acc.at(j, j) = acc.at(j, j) + Cx<Rational>(ck);
  }
  return c;
}

}  // namespace detail

// Positive semidefiniteness.  Float mode diagonalizes (Eigen self-adjoint
// solver) with tolerance on the smallest eigenvalue; exact mode tests the
// sign pattern of the characteristic polynomial, which decides PSD exactly
// for real-rooted (Hermitian) matrices.
inline bool psd(const Dense<double>& m, const Context<double>& ctx) {
  if (!is_hermitian(m, ctx)) throw NotSelfAdjoint("psd requires a Hermitian matrix");
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXcd em(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      em(r, c) = std::complex<double>(m.at(r, c).re, m.at(r, c).im);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(em, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -ctx.tol;
}

inline bool psd(const Dense<Rational>& m, const Context<Rational>& ctx) {
  if (!is_hermitian(m, ctx)) throw NotSelfAdjoint("psd requires a Hermitian matrix");
  std::vector<Rational> c = detail::char_poly(m);
  // Eigenvalues all >= 0 iff (-1)^(n-k) c_k >= 0 for every coefficient.
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < n; ++k) {
    bool flip = (n - k) % 2 == 1;
    Rational v = flip ? Rational(-c[k]) : c[k];
    if (v < 0) return false;
  }
  return true;
}

// PPT across all three cuts; characterizes A&B&C for X-shaped states.
template <class S>
bool ppt_all_cuts(const XMat<S>& m, const Context<S>& ctx) {
  Dense<S> d = dense(m);
  for (Cut cut : kAllCuts)
    if (!psd(partial_transpose(d, cut), ctx)) return false;
  return true;
}

// Conjugation by a permutation of the tensor factors, with the X-part
// re-extracted (permutations of X-shaped matrices stay X-shaped).
// perm maps output qubit position -> input qubit position.
template <class S>
XMat<S> permute_qubits(const XMat<S>& m, const std::array<int, 3>& perm, const Context<S>& ctx) {
  Dense<S> d = dense(m);
  Dense<S> out(8);
  auto remap = [&](int idx) {
    int bits[3] = {(idx >> 2) & 1, (idx >> 1) & 1, idx & 1};
    return (bits[perm[0]] << 2) | (bits[perm[1]] << 1) | bits[perm[2]];
  };
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) out.at(r, c) = d.at(remap(r), remap(c));
  return ghz_twirl_xpart(out, ctx);
}

struct Dims {
  int p, q, r;
};

namespace detail {

// iota_d(x) = x (+) tr(x) 1_{d-2} on a 2x2 block, normalized trace.
template <class S>
Dense<S> embed_factor(const Dense<S>& x, int d) {
  Dense<S> out(static_cast<std::size_t>(d));
  Cx<S> tr = x.at(0, 0) + x.at(1, 1);
  Cx<S> half{num::from_ratio<S>(1, 2), S(0)};
  tr = half * tr;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.at(r, c) = x.at(r, c);
  for (int k = 2; k < d; ++k) out.at(k, k) = tr;
  return out;
}

}  // namespace detail

// iota_p (x) iota_q (x) iota_r, extended linearly from elementary tensors.
template <class S>
Dense<S> embed(const Dense<S>& m, Dims dims) {
  if (m.size() != 8) throw BadDims("embed expects an 8x8 matrix");
  if (dims.p < 2 || dims.q < 2 || dims.r < 2) throw BadDims();
  const int P = dims.p, Q = dims.q, R = dims.r;
  Dense<S> out(static_cast<std::size_t>(P * Q * R));
  // Precompute iota_d(E_ij) for each factor.
  std::array<std::array<Dense<S>, 2>, 2> fp, fq, fr;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Dense<S> e(2);
      e.at(i, j) = Cx<S>(S(1));
      fp[i][j] = detail::embed_factor(e, P);
      fq[i][j] = detail::embed_factor(e, Q);
      fr[i][j] = detail::embed_factor(e, R);
    }
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int i3 = 0; i3 < 2; ++i3)
        for (int j1 = 0; j1 < 2; ++j1)
          for (int j2 = 0; j2 < 2; ++j2)
            for (int j3 = 0; j3 < 2; ++j3) {
              Cx<S> coef = m.at(i1 * 4 + i2 * 2 + i3, j1 * 4 + j2 * 2 + j3);
              if (coef.is_zero()) continue;
              const Dense<S>& A = fp[i1][j1];
              const Dense<S>& B = fq[i2][j2];
              const Dense<S>& C = fr[i3][j3];
              for (int a1 = 0; a1 < P; ++a1)
                for (int b1 = 0; b1 < P; ++b1) {
                  if (A.at(a1, b1).is_zero()) continue;
                  for (int a2 = 0; a2 < Q; ++a2)
                    for (int b2 = 0; b2 < Q; ++b2) {
                      if (B.at(a2, b2).is_zero()) continue;
                      Cx<S> partial = coef * A.at(a1, b1) * B.at(a2, b2);
                      for (int a3 = 0; a3 < R; ++a3)
                        for (int b3 = 0; b3 < R; ++b3) {
                          if (C.at(a3, b3).is_zero()) continue;
                          std::size_t row = (a1 * Q + a2) * R + a3;
                          std::size_t col = (b1 * Q + b2) * R + b3;
                          out.at(row, col) = out.at(row, col) + partial * C.at(a3, b3);
                        }
                    }
                }
            }
  return out;
}

// Q_p (x) Q_q (x) Q_r: compression onto the leading 2x2 block of each factor.
template <class S>
Dense<S> compress(const Dense<S>& m, Dims dims) {
  if (dims.p < 2 || dims.q < 2 || dims.r < 2) throw BadDims();
  const int P = dims.p, Q = dims.q, R = dims.r;
  if (m.size() != static_cast<std::size_t>(P * Q * R)) throw BadDims("matrix size does not match dims");
  Dense<S> out(8);
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int i3 = 0; i3 < 2; ++i3)
        for (int j1 = 0; j1 < 2; ++j1)
          for (int j2 = 0; j2 < 2; ++j2)
            for (int j3 = 0; j3 < 2; ++j3)
              out.at(i1 * 4 + i2 * 2 + i3, j1 * 4 + j2 * 2 + j3) =
                  m.at((i1 * Q + i2) * R + i3, (j1 * Q + j2) * R + j3);
  return out;
}

template <class S>
struct Decomposition {
  std::vector<XMat<S>> parts;
  std::vector<ConeTag> tags;
};

namespace detail {

inline bool meet_of_basics(ConeTag t) {
  switch (t) {
    case ConeTag::A:
    case ConeTag::B:
    case ConeTag::C:
    case ConeTag::AmB:
    case ConeTag::BmC:
    case ConeTag::CmA:
    case ConeTag::AmBmC:
      return true;
    default:
      return false;
  }
}

inline std::vector<PairIndex> s1_pairs_of_tag(ConeTag t) {
  std::vector<PairIndex> ps;
  for (const SAtom& a : requirement_set(t)) ps.push_back(a.p);
  return ps;
}

}  // namespace detail

// Feasibility search for m = sum of states in the given basic/meet cones,
// restricted to GHZ-symmetric splits with phases aligned to m: part p takes
// diagonal a^(p) and anti-diagonal lambda^(p) c entrywise, all constraints
// linear.  Sound (certificates re-verified), not complete.
template <class S>
std::optional<Decomposition<S>> decompose_join(const XMat<S>& m, const std::vector<ConeTag>& parts,
                                               const Context<S>& ctx) {
  for (ConeTag t : parts)
    if (!detail::meet_of_basics(t)) throw UnsupportedPart(std::string(cone_tag_name(t)) + " is not a basic/meet tag");
  if (parts.size() < 2) throw UnsupportedPart("need at least two parts");
  if (XState<S>::make(m, ctx) == std::nullopt) throw NotAState("decompose_join requires a state");
  auto g = GhzDiagonal<S>::from_xmat(m);
  if (!g) return std::nullopt;

  std::array<Rational, 4> a{}, abs_c{};
  for (int i = 0; i < 4; ++i) {
    if constexpr (num::is_exact_v<S>) {
      a[i] = g->a[i];
      abs_c[i] = num::abs_of(Rational(g->c[i]));
    } else {
      a[i] = Rational(g->a[i]);
      abs_c[i] = num::abs_of(Rational(g->c[i]));
    }
  }

  // Variables: for each part p < k-1, a block (a'_0..a'_3, l_0..l_3); the
  // last part is the remainder.
  const std::size_t k = parts.size();
  lp::Problem prob;
  prob.nvars = 8 * (k - 1);
  auto var_a = [](std::size_t part, int i) { return 8 * part + i; };
  auto var_l = [](std::size_t part, int i) { return 8 * part + 4 + i; };

  // Block sums stay within the totals.
  for (int i = 0; i < 4; ++i) {
    auto& ra = prob.add(lp::Rel::Le, a[i]);
    for (std::size_t p = 0; p + 1 < k; ++p) ra.coef[var_a(p, i)] = 1;
    auto& rl = prob.add(lp::Rel::Le, Rational(1));
    for (std::size_t p = 0; p + 1 < k; ++p) rl.coef[var_l(p, i)] = 1;
  }
  // S1 constraints per part: for pair {i,j} in the part's S1 set,
  // a_i >= l_s |c_s| for every slot pair (i or j) x (i or j).
  auto add_s1 = [&](std::size_t part, PairIndex pr) {
    for (int slot : {pr.i, pr.j}) {
      for (int zslot : {pr.i, pr.j}) {
        if (part + 1 < k) {
          auto& row = prob.add(lp::Rel::Ge, Rational(0));
          row.coef[var_a(part, slot)] = 1;
          row.coef[var_l(part, zslot)] = -abs_c[zslot];
        } else {
          // Remainder part: (a_slot - sum a') >= (1 - sum l) |c_zslot|.
          auto& row = prob.add(lp::Rel::Ge, abs_c[zslot] - a[slot]);
          for (std::size_t p = 0; p + 1 < k; ++p) {
            row.coef[var_a(p, slot)] = -1;
            row.coef[var_l(p, zslot)] = abs_c[zslot];
          }
        }
      }
    }
  };
  for (std::size_t p = 0; p < k; ++p)
    for (PairIndex pr : detail::s1_pairs_of_tag(parts[p])) add_s1(p, pr);

  auto x = lp::find_feasible(prob);
  if (!x) return std::nullopt;

  // Reassemble parts and re-verify every certificate claim.
  Decomposition<S> dec;
  dec.tags = parts;
  XMat<S> remainder = m;
  for (std::size_t p = 0; p + 1 < k; ++p) {
    GhzDiagonal<S> part;
    for (int i = 0; i < 4; ++i) {
      Rational ai = (*x)[var_a(p, i)];
      Rational li = (*x)[var_l(p, i)];
      if constexpr (num::is_exact_v<S>) {
        part.a[i] = ai;
        part.c[i] = S(li * Rational(g->c[i]));
      } else {
        part.a[i] = num::to_double(ai);
        part.c[i] = num::to_double(li * Rational(g->c[i]));
      }
    }
    XMat<S> pm = part.to_xmat();
    dec.parts.push_back(pm);
    remainder = remainder - pm;
  }
  dec.parts.push_back(remainder);
  for (std::size_t p = 0; p < k; ++p)
    if (member(dec.parts[p], parts[p], ctx).kind == Membership::Out) return std::nullopt;
  return dec;
}

}  // namespace xsep
