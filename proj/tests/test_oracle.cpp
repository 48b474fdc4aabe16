#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "xsep/lattice.hpp"
#include "xsep/oracle.hpp"
#include "xsep/sampling.hpp"
#include "xsep/slice.hpp"

using namespace xsep;

namespace {

const Context<Rational> kExact{};
const Context<double> kFloat{};

Dense<Rational> to_exact(const Dense<double>& d) {
  Dense<Rational> out(d.size());
  for (std::size_t r = 0; r < d.size(); ++r)
    for (std::size_t c = 0; c < d.size(); ++c)
      out.at(r, c) = Cx<Rational>{Rational(d.at(r, c).re), Rational(d.at(r, c).im)};
  return out;
}

}  // namespace

TEST_CASE("dense materialization") {
  XMat<Rational> r00 = rho_st(Rational(0), Rational(0));
  Dense<Rational> d = dense(r00);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) {
      if (r == c)
        CHECK(d.at(r, c) == Cx<Rational>(Rational(1, 8)));
      else
        CHECK(d.at(r, c).is_zero());
    }
  CHECK(dense(XMat<Rational>{}) == Dense<Rational>(8));
}

TEST_CASE("psd checks") {
  CHECK(psd(dense(rho_st(0.0, 0.0)), kFloat));
  CHECK(psd(dense(rho_st(Rational(0), Rational(0))), kExact));
  CHECK(psd(dense(rho_st(Rational(2, 3), Rational(-1))), kExact));

  XMat<Rational> bad;
  bad.a = {Rational(1), Rational(1), Rational(1), Rational(1)};
  bad.b = bad.a;
  bad.z[0] = Cx<Rational>(Rational(2));
  CHECK(!psd(dense(bad), kExact));
  XMat<double> badf;
  badf.a = {1, 1, 1, 1};
  badf.b = badf.a;
  badf.z[0] = Cx<double>(2.0);
  CHECK(!psd(dense(badf), kFloat));

  Dense<double> nh(8);
  nh.at(0, 1) = Cx<double>(1.0);
  CHECK_THROWS_AS(psd(nh, kFloat), NotSelfAdjoint);
}

TEST_CASE("exact and float psd agree on random X-matrices") {
  Sampler smp(13);
  int negatives = 0;
  for (int rep = 0; rep < 120; ++rep) {
    XMat<double> m = smp.random_xmat();
    for (int i = 0; i < 4; ++i) {
      m.a[i] = std::abs(m.a[i]);
      m.b[i] = std::abs(m.b[i]);
    }
    Dense<double> d = dense(m);
    bool pf = psd(d, kFloat);
    bool pe = psd(to_exact(d), kExact);
    if (!pe) ++negatives;
    CHECK(pf == pe);
  }
  CHECK(negatives > 10);
}

TEST_CASE("partial transpose action on the anti-diagonal") {
  Sampler smp(29);
  XMat<double> m = smp.random_xmat();
  Dense<double> d = dense(m);

  // Cut A swaps slots within the pairs {1,4} and {2,3}, with conjugation.
  XMat<double> pa = ghz_twirl_xpart(partial_transpose(d, Cut::A_BC), kFloat);
  CHECK(pa.z[0] == m.z[3].conj());
  CHECK(pa.z[3] == m.z[0].conj());
  CHECK(pa.z[1] == m.z[2].conj());
  CHECK(pa.z[2] == m.z[1].conj());
  CHECK(pa.a == m.a);
  CHECK(pa.b == m.b);

  // Cut B permutes {1,3} and {2,4} without conjugation; cut C {1,2}, {3,4}.
  XMat<double> pb = ghz_twirl_xpart(partial_transpose(d, Cut::B_CA), kFloat);
  CHECK(pb.z[0] == m.z[2]);
  CHECK(pb.z[2] == m.z[0]);
  CHECK(pb.z[1] == m.z[3]);
  CHECK(pb.z[3] == m.z[1]);
  XMat<double> pc = ghz_twirl_xpart(partial_transpose(d, Cut::C_AB), kFloat);
  CHECK(pc.z[0] == m.z[1]);
  CHECK(pc.z[1] == m.z[0]);
  CHECK(pc.z[2] == m.z[3]);
  CHECK(pc.z[3] == m.z[2]);

  // Involution and diagonal preservation for every cut.
  for (Cut cut : kAllCuts) {
    Dense<double> once = partial_transpose(d, cut);
    CHECK(partial_transpose(once, cut) == d);
    for (int i = 0; i < 8; ++i) CHECK(once.at(i, i) == d.at(i, i));
  }

  // Diagonal matrices are fixed.
  Dense<double> diag(8);
  for (int i = 0; i < 8; ++i) diag.at(i, i) = Cx<double>(i * 0.1);
  for (Cut cut : kAllCuts) CHECK(partial_transpose(diag, cut) == diag);
}

TEST_CASE("ppt_all_cuts on slice points") {
  CHECK(ppt_all_cuts(rho_st(Rational(0), Rational(0)), kExact));
  CHECK(ppt_all_cuts(rho_st(Rational(-3, 10), Rational(3, 10)), kExact));
  CHECK(!ppt_all_cuts(rho_st(Rational(1), Rational(0)), kExact));
  CHECK(!ppt_all_cuts(rho_st(1.0, 0.0), kFloat));
}

TEST_CASE("ppt equals the S1 catalog, per cut and overall") {
  Sampler smp(37);
  Context<double> tol8{1e-8};
  for (int rep = 0; rep < 800; ++rep) {
    XMat<double> m = smp.random_xstate();
    Dense<double> d = dense(m);
    bool all = true;
    for (Cut cut : kAllCuts) {
      bool single = psd(partial_transpose(d, cut), tol8);
      bool cone = member(m, cone_of_cut(cut), tol8).kind != Membership::Out;
      CHECK(single == cone);  // single-cut PPT equals the basic cone
      all = all && single;
    }
    bool triple = member(m, ConeTag::AmBmC, tol8).kind != Membership::Out;
    CHECK(all == triple);
  }
}

TEST_CASE("qubit permutations") {
  Sampler smp(43);
  XMat<double> m = smp.random_xstate();
  CHECK(permute_qubits(m, {0, 1, 2}, kFloat) == m);

  // Swapping B and C exchanges anti-diagonal slots 2 and 3, fixing 1 and 4.
  XMat<double> bc = permute_qubits(m, {0, 2, 1}, kFloat);
  CHECK(bc.z[0] == m.z[0]);
  CHECK(bc.z[3] == m.z[3]);
  CHECK(bc.z[1] == m.z[2]);
  CHECK(bc.z[2] == m.z[1]);

  // Cone covariance under relabeling: swapping two parties exchanges their
  // cones and fixes the third.
  Context<double> tol8{1e-8};
  for (int rep = 0; rep < 100; ++rep) {
    XMat<double> x = smp.random_xstate();
    XMat<double> xab = permute_qubits(x, {1, 0, 2}, tol8);
    CHECK(member(x, ConeTag::A, tol8).kind == member(xab, ConeTag::B, tol8).kind);
    CHECK(member(x, ConeTag::B, tol8).kind == member(xab, ConeTag::A, tol8).kind);
    CHECK(member(x, ConeTag::C, tol8).kind == member(xab, ConeTag::C, tol8).kind);
    XMat<double> xbc = permute_qubits(x, {0, 2, 1}, tol8);
    CHECK(member(x, ConeTag::B, tol8).kind == member(xbc, ConeTag::C, tol8).kind);
    CHECK(member(x, ConeTag::BjC, tol8).kind == member(xbc, ConeTag::BjC, tol8).kind);
    CHECK(member(x, ConeTag::BjCmA, tol8).kind == member(xbc, ConeTag::CjAmB, tol8).kind);
  }
}

TEST_CASE("embed and compress") {
  // dims (2,2,2) is the identity embedding.
  XMat<double> m = rho_st(0.25, -0.125);
  Dense<double> d = dense(m);
  CHECK(compress(embed(d, {2, 2, 2}), {2, 2, 2}) == d);
  CHECK(embed(d, {2, 2, 2}) == d);

  Sampler smp(61);
  for (Dims dims : {Dims{3, 3, 3}, Dims{4, 3, 2}, Dims{2, 3, 4}}) {
    for (int rep = 0; rep < 20; ++rep) {
      Dense<double> x = dense(smp.random_xstate());
      CHECK(compress(embed(x, dims), dims) == x);
    }
  }

  CHECK_THROWS_AS(embed(d, {1, 2, 2}), BadDims);
  CHECK_THROWS_AS(compress(Dense<double>(8), {2, 2, 3}), BadDims);

  // The embedding preserves positivity of states (it adds trace blocks).
  Dense<double> e = embed(dense(rho_st(0.0, 0.0)), {3, 3, 3});
  Context<double> ctx{};
  CHECK(e.size() == 27);
  CHECK(is_hermitian(e, ctx));
}

TEST_CASE("decompose_join: the paper's split") {
  XMat<Rational> m = rho_st(Rational(-10, 13), Rational(3, 13));
  // The displayed identity: 52 rho = X(3,1,3,3;-3,1,1,-1) + X(4,0,8,4;0,0,0,-4).
  XMat<Rational> p1 = ghz_xmat<Rational>({Rational(3), Rational(1), Rational(3), Rational(3)},
                                         {Rational(-3), Rational(1), Rational(1), Rational(-1)});
  XMat<Rational> p2 = ghz_xmat<Rational>({Rational(4), Rational(0), Rational(8), Rational(4)},
                                         {Rational(0), Rational(0), Rational(0), Rational(-4)});
  CHECK(p1 + p2 == Rational(52) * m);
  CHECK(member(p1, ConeTag::AmB, kExact).kind != Membership::Out);
  CHECK(member(p2, ConeTag::CmA, kExact).kind != Membership::Out);

  auto dec = decompose_join(m, {ConeTag::AmB, ConeTag::CmA}, kExact);
  REQUIRE(dec.has_value());
  REQUIRE(dec->parts.size() == 2);
  CHECK(dec->parts[0] + dec->parts[1] == m);
  CHECK(member(dec->parts[0], ConeTag::AmB, kExact).kind != Membership::Out);
  CHECK(member(dec->parts[1], ConeTag::CmA, kExact).kind != Membership::Out);
}

TEST_CASE("decompose_join: trivial and impossible splits") {
  XMat<Rational> r00 = rho_st(Rational(0), Rational(0));
  auto dec = decompose_join(r00, {ConeTag::B, ConeTag::C}, kExact);
  REQUIRE(dec.has_value());
  CHECK(dec->parts[0] + dec->parts[1] == r00);

  // rho_{1,0} sits in the gap: no split into (A&B) + (A&C) exists.
  XMat<Rational> r10 = rho_st(Rational(1), Rational(0));
  CHECK(!decompose_join(r10, {ConeTag::AmB, ConeTag::CmA}, kExact).has_value());

  CHECK_THROWS_AS(decompose_join(r00, {ConeTag::AjB, ConeTag::C}, kExact), UnsupportedPart);
  CHECK_THROWS_AS(decompose_join(rho_st(Rational(1), Rational(1)), {ConeTag::B, ConeTag::C}, kExact),
                  NotAState);
}

TEST_CASE("witness and decomposition certificates never coexist") {
  Sampler smp(71);
  auto expr = normalize(parse_expr("(A&B)|(A&C)"));
  int witnesses = 0, decomps = 0;
  for (int rep = 0; rep < 60; ++rep) {
    Rational s(smp.uniform_int(-12, 12), 12), t(smp.uniform_int(-12, 12), 12);
    XMat<Rational> m = rho_st(s, t);
    if (validate(m, kExact) != Validity::State) continue;
    auto wit = certify_out(m, expr, kExact);
    auto dec = decompose_join(m, {ConeTag::AmB, ConeTag::CmA}, kExact);
    CHECK(!(wit.has_value() && dec.has_value()));
    witnesses += wit.has_value();
    decomps += dec.has_value();
  }
  CHECK(witnesses > 0);
  CHECK(decomps > 0);
}
