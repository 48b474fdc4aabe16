#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "xsep/sampling.hpp"
#include "xsep/slice.hpp"
#include "xsep/witness.hpp"

using namespace xsep;

namespace {

const Context<Rational> kExact{};
const Context<double> kFloat{};

XMat<Rational> w_mod() { return modularity_witness<Rational>(); }

}  // namespace

TEST_CASE("W margins of the modularity witness") {
  WitnessEval<Rational> w(w_mod());
  CHECK(w1_margin(w, pairs::p23) == Rational(1));
  CHECK(w2_margin(w, pairs::p12) == Rational(0));
  CHECK(w2_margin(w, pairs::p34) == Rational(1));
  CHECK(w2_margin(w, pairs::p13) == Rational(0));
  CHECK(w2_margin(w, pairs::p24) == Rational(1));
  CHECK(w3_margin(w) == Rational(0));
}

TEST_CASE("zero witness sits on every dual boundary") {
  WitnessEval<Rational> w{XMat<Rational>{}};
  for (PairIndex p : kAllPairs) {
    CHECK(w1_margin(w, p) == Rational(0));
    CHECK(w2_margin(w, p) == Rational(0));
  }
  CHECK(w3_margin(w) == Rational(0));
  for (int g = 0; g < 3; ++g) {
    CHECK(member_dual(w, DualCone::of_gen(g), kExact).kind == Membership::Boundary);
    CHECK(member_dual(w, DualCone::join_of_duals_opposite(g), kExact).kind == Membership::Boundary);
  }
}

TEST_CASE("the modularity witness lives in (A*|B*)&(A*|C*)") {
  auto dual = DualCone::dual_of(normalize(parse_expr("(A&B)|(A&C)")));
  REQUIRE(dual.has_value());
  auto v = member_dual(w_mod(), *dual, kExact);
  CHECK(v.kind == Membership::Boundary);  // several margins are exactly zero
}

TEST_CASE("pair witness construction") {
  auto r00 = XState<Rational>::make(rho_st(Rational(0), Rational(0)), kExact);
  REQUIRE(r00.has_value());
  XMat<Rational> w = construct_pair_witness(*r00, pairs::p12, pairs::p34, kExact);
  CHECK(w.a == std::array<Rational, 4>{Rational(1), Rational(1), Rational(0), Rational(0)});
  CHECK(w.b == w.a);
  CHECK(w.z[2] == Cx<Rational>(Rational(-1)));
  CHECK(w.z[3] == Cx<Rational>(Rational(-1)));
  CHECK(pairing(w, r00->mat()) == Rational(1, 2));  // 2 * (2/8)

  // W1 margin over pair {1,4} of the witness built from a = b = 1, z = 0.
  XMat<Rational> ones = ghz_xmat<Rational>({Rational(1), Rational(1), Rational(1), Rational(1)},
                                           {Rational(0), Rational(0), Rational(0), Rational(0)});
  auto ones_st = XState<Rational>::make(ones, kExact);
  XMat<Rational> w2 = construct_pair_witness(*ones_st, pairs::p12, pairs::p34, kExact);
  WitnessEval<Rational> we(w2);
  CHECK(w1_margin(we, pairs::p14) == Rational(0));
  CHECK(w3_margin(we) == Rational(0));

  // From rho_1 with p = {2,3}, q = {1,4} the pairing vanishes.
  auto r1 = XState<Rational>::make(rho_modular(Rational(1)), kExact);
  XMat<Rational> w3 = construct_pair_witness(*r1, pairs::p23, pairs::p14, kExact);
  CHECK(pairing(w3, r1->mat()) == Rational(0));
}

TEST_CASE("pair witness pairing identity on random states") {
  Sampler smp(51);
  for (int rep = 0; rep < 60; ++rep) {
    XMat<double> m = smp.random_xstate();
    auto st = XState<double>::make(m, kFloat);
    REQUIRE(st.has_value());
    for (PairIndex p : {pairs::p12, pairs::p14, pairs::p23}) {
      for (PairIndex q : {pairs::p34, pairs::p13}) {
        XMat<double> w = construct_pair_witness(*st, p, q, kFloat);
        double expect = 2 * (st->rp()[p.i] + st->rp()[p.j] - st->az()[q.i] - st->az()[q.j]);
        CHECK(pairing(w, m) == doctest::Approx(expect).epsilon(1e-7));
      }
    }
  }
}

TEST_CASE("regularization of degenerate entries") {
  // rho_{1,0} has a_3 = 0, so building on a pair containing slot 3 needs the
  // epsilon regularization.
  auto r10 = XState<Rational>::make(rho_st(Rational(1), Rational(0)), kExact);
  REQUIRE(r10.has_value());
  CHECK_THROWS_AS(construct_pair_witness(*r10, pairs::p34, pairs::p14, kExact, false),
                  DegenerateEntries);
  XMat<Rational> w = construct_pair_witness(*r10, pairs::p34, pairs::p14, kExact);
  for (int i = 0; i < 4; ++i) {
    CHECK(w.a[i] >= Rational(0));
    CHECK(w.b[i] >= Rational(0));
  }
  // The regularized witness still certifies: S4[{3,4}|{1,4}] < 0 there.
  CHECK(pairing(w, r10->mat()) < Rational(0));
}

TEST_CASE("certify_out on the distributivity gap") {
  XMat<Rational> r10 = rho_st(Rational(1), Rational(0));
  auto cert = certify_out(r10, parse_expr("(A&B)|(A&C)"), kExact);
  REQUIRE(cert.has_value());
  CHECK(cert->pairing_value < Rational(0));
  REQUIRE(cert->witness.dual.has_value());
  CHECK(member_dual(cert->witness.body, *cert->witness.dual, kExact).kind != Membership::Out);

  // The spec's example witness is feasible and negative there as well.
  XMat<Rational> w;
  w.a = {Rational(0), Rational(1, 2), Rational(3, 2), Rational(1, 2)};
  w.b = w.a;
  w.z[0] = Cx<Rational>(Rational(-1));
  w.z[3] = Cx<Rational>(Rational(-1));
  auto dual = DualCone::dual_of(normalize(parse_expr("(A&B)|(A&C)")));
  CHECK(member_dual(w, *dual, kExact).kind != Membership::Out);
  CHECK(pairing(w, r10) == Rational(-1, 8));
}

TEST_CASE("certify_out on the modularity family") {
  auto dual_expr = parse_expr("(A&B)|(A&C)");
  auto cert = certify_out(rho_modular(Rational(1)), dual_expr, kExact);
  REQUIRE(cert.has_value());
  CHECK(cert->pairing_value < Rational(0));

  // Interior points admit no certificate.
  CHECK(!certify_out(rho_modular(Rational(1, 2)), dual_expr, kExact).has_value());
  CHECK(!certify_out(rho_st(Rational(0), Rational(0)), dual_expr, kExact).has_value());
  // Exactly at the threshold the optimum is zero: inconclusive.
  CHECK(!certify_out(rho_modular(Rational(3, 4)), dual_expr, kExact).has_value());
}

TEST_CASE("certify_out against a basic cone") {
  XMat<Rational> r10 = rho_st(Rational(1), Rational(0));
  auto cert = certify_out(r10, ConeTag::B, kExact);
  REQUIRE(cert.has_value());
  CHECK(cert->pairing_value < Rational(0));
  CHECK(member_dual(cert->witness.body, DualCone::of_gen(1), kExact).kind != Membership::Out);

  // rho_00 is interior to every catalog cone.
  for (ConeTag tag : {ConeTag::A, ConeTag::B, ConeTag::C, ConeTag::BjC, ConeTag::AjBmC})
    CHECK(!certify_out(rho_st(Rational(0), Rational(0)), tag, kExact).has_value());
}

TEST_CASE("unsupported duals are rejected") {
  XMat<Rational> r00 = rho_st(Rational(0), Rational(0));
  CHECK_THROWS_AS(certify_out(r00, parse_expr("A&B&C"), kExact), UnsupportedCone);
  CHECK_THROWS_AS(certify_out(r00, parse_expr("A&(B|C)"), kExact), UnsupportedCone);
}

TEST_CASE("duality fuzz: nonnegative pairing inside matching cones") {
  Sampler smp(99);
  struct PairKind {
    ConeTag primal;
    const char* dual_expr;
  };
  const PairKind kinds[] = {
      {ConeTag::A, "A"},     {ConeTag::B, "B"},     {ConeTag::C, "C"},
      {ConeTag::AmB, "A&B"}, {ConeTag::BmC, "B&C"}, {ConeTag::CmA, "C&A"},
      {ConeTag::BjC, "B|C"}, {ConeTag::AjBmC, "A|(B&C)"},
  };
  for (int rep = 0; rep < 1000; ++rep) {
    const PairKind& k = kinds[rep % (sizeof(kinds) / sizeof(kinds[0]))];
    auto dual = DualCone::dual_of(normalize(parse_expr(k.dual_expr)));
    REQUIRE(dual.has_value());
    XMat<double> m = sampling::sample_in_cone<double>(smp, k.primal, kFloat);
    XMat<double> w = sampling::sample_in_dual<double>(smp, *dual, kFloat);
    CHECK(pairing(w, m) >= -1e-9);
  }
}

TEST_CASE("sampled cone members really are members") {
  Sampler smp(7);
  for (int rep = 0; rep < 200; ++rep) {
    ConeTag tag = kAllConeTags[static_cast<std::size_t>(rep) % kAllConeTags.size()];
    XMat<double> m = sampling::sample_in_cone<double>(smp, tag, kFloat);
    CHECK(member(m, tag, Context<double>{1e-7}).kind != Membership::Out);
  }
}
