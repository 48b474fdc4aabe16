#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "xsep/emit.hpp"
#include "xsep/oracle.hpp"
#include "xsep/slice.hpp"

using namespace xsep;

namespace {

const Context<Rational> kExact{};
const Context<double> kFloat{};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("rho_st at the named points") {
  CHECK(rho_st(Rational(0), Rational(0)) ==
        num::from_ratio<Rational>(1, 8) *
            ghz_xmat<Rational>({Rational(1), Rational(1), Rational(1), Rational(1)},
                               {Rational(0), Rational(0), Rational(0), Rational(0)}));
  CHECK(rho_st(Rational(2, 3), Rational(-1)) ==
        num::from_ratio<Rational>(1, 12) *
            ghz_xmat<Rational>({Rational(1), Rational(3), Rational(1), Rational(1)},
                               {Rational(-1), Rational(-1), Rational(-1), Rational(1)}));
  CHECK(rho_st(Rational(1), Rational(0)) ==
        num::from_ratio<Rational>(1, 8) *
            ghz_xmat<Rational>({Rational(1), Rational(2), Rational(0), Rational(1)},
                               {Rational(1), Rational(0), Rational(0), Rational(1)}));
  CHECK(validate(rho_st(Rational(1), Rational(1)), kExact) == Validity::SelfAdjointOnly);
}

TEST_CASE("rho_modular endpoints and midpoint") {
  CHECK(rho_modular(Rational(0)) == rho_st(Rational(0), Rational(0)));
  CHECK(rho_modular(Rational(1)) ==
        num::from_ratio<Rational>(1, 12) *
            ghz_xmat<Rational>({Rational(2), Rational(1), Rational(1), Rational(2)},
                               {Rational(2), Rational(0), Rational(1), Rational(0)}));
  XMat<Rational> mid = rho_modular(Rational(1, 2));
  CHECK(mid.a[0] == Rational(7, 48));  // (3.5)/24
  CHECK(mid.z[0].re == Rational(1, 12));
  CHECK_THROWS_AS(rho_modular(Rational(-1, 10)), OutOfRange);
  CHECK_THROWS_AS(rho_modular(Rational(11, 10)), OutOfRange);
}

TEST_CASE("region verdicts at marked points") {
  CHECK(region(RegionTag::H1, Rational(-10, 13), Rational(3, 13), kExact).kind ==
        Membership::Boundary);
  CHECK(region(RegionTag::R, Rational(1), Rational(0), kExact).kind == Membership::Boundary);
  CHECK(region(RegionTag::R, Rational(0), Rational(0), kExact).kind == Membership::In);
  CHECK(region(RegionTag::FullSep, Rational(-4, 9), Rational(1, 3), kExact).kind ==
        Membership::Boundary);
  CHECK(region(RegionTag::FullSep, Rational(4, 7), Rational(-3, 7), kExact).kind ==
        Membership::Boundary);
  CHECK(region(RegionTag::FullSep, Rational(-3, 10), Rational(3, 10), kExact).kind ==
        Membership::In);
  CHECK(region(RegionTag::FullSep, Rational(1, 2), Rational(1, 2), kExact).kind == Membership::Out);
  CHECK(region(RegionTag::H2, Rational(0), Rational(0), kExact).kind == Membership::In);
  CHECK(region(RegionTag::H2, Rational(1), Rational(0), kExact).kind == Membership::Out);
}

TEST_CASE("region vertices lie on their boundaries") {
  for (RegionTag tag : {RegionTag::R, RegionTag::BetaPentagon, RegionTag::GammaPentagon,
                        RegionTag::H1, RegionTag::H2}) {
    for (const auto& [s, t] : region_vertices(tag)) {
      auto v = region(tag, s, t, kExact);
      CHECK(v.kind == Membership::Boundary);  // on the boundary, in the closure
    }
  }
}

TEST_CASE("figure 2 curve endpoints sit on the full separability boundary") {
  // ((-3+sqrt 5)/5, 3/5) and (-11+5 sqrt 5, 6-3 sqrt 5), evaluated in floats.
  const double r5 = std::sqrt(5.0);
  Context<double> grid_tol{1e-9};
  for (auto [s, t] : {std::pair<double, double>{(-3 + r5) / 5, 0.6},
                      {-11 + 5 * r5, 6 - 3 * r5}}) {
    auto v = region(RegionTag::FullSep, s, t, grid_tol);
    CHECK(v.kind == Membership::Boundary);
  }
}

TEST_CASE("closed-form members equal region predicates on a denominator-24 grid") {
  long mismatches = 0;
  long compared = 0;
  for (int i = -24; i <= 24; ++i) {
    for (int j = -24; j <= 24; ++j) {
      Rational s(i, 24), t(j, 24);
      if (region(RegionTag::R, s, t, kExact).kind == Membership::Out) continue;
      XMat<Rational> m = rho_st(s, t);
      auto st = XState<Rational>::make(m, kExact);
      REQUIRE(st.has_value());
      ++compared;
      auto agree = [&](ConeTag tag, RegionTag rtag) {
        if (member(*st, tag, kExact).kind != region(rtag, s, t, kExact).kind) ++mismatches;
      };
      agree(ConeTag::A, RegionTag::R);
      agree(ConeTag::AjB, RegionTag::R);
      agree(ConeTag::BjC, RegionTag::R);
      agree(ConeTag::CjA, RegionTag::R);
      agree(ConeTag::AjBjC, RegionTag::R);
      agree(ConeTag::B, RegionTag::BetaPentagon);
      agree(ConeTag::C, RegionTag::GammaPentagon);
      agree(ConeTag::BjCmA, RegionTag::H1);
      agree(ConeTag::CjAmB, RegionTag::H1);
      agree(ConeTag::AmBmC, RegionTag::H2);
      // Full separability between the two module routes.
      auto g = GhzDiagonal<Rational>::from_xmat(m);
      if (fully_separable_ghz(*g, kExact).kind != region(RegionTag::FullSep, s, t, kExact).kind)
        ++mismatches;
      // FullSep implies H2 (full separability implies PPT).
      if (region(RegionTag::FullSep, s, t, kExact).kind != Membership::Out)
        CHECK(region(RegionTag::H2, s, t, kExact).kind != Membership::Out);
    }
  }
  CHECK(compared > 900);
  CHECK(mismatches == 0);
}

TEST_CASE("scan covers single points and counts mismatches") {
  GridSpec grid;
  grid.n = 2;
  grid.s_lo = Rational(0);
  grid.s_hi = Rational(0);
  grid.t_lo = Rational(0);
  grid.t_hi = Rational(0);
  auto tbl = scan(grid, figure1_classifiers(), kExact);
  for (std::size_t ci = 0; ci < tbl.classifiers.size(); ++ci)
    CHECK(tbl.at(0, 0, ci) == Membership::In);
  CHECK(mismatch_count(tbl) == 0);

  GridSpec bad;
  bad.n = 1;
  CHECK_THROWS_AS(scan(bad, figure1_classifiers(), kExact), OutOfRange);
}

TEST_CASE("mismatch count is zero on a coarse exact grid") {
  GridSpec grid;
  grid.n = 25;
  auto tbl = scan(grid, figure1_classifiers(), kExact);
  CHECK(mismatch_count(tbl) == 0);
  auto tbl2 = scan(grid, figure2_classifiers(), kExact);
  CHECK(mismatch_count(tbl2) == 0);
}

TEST_CASE("csv emission") {
  SliceTable<Rational> empty;
  empty.classifiers = figure2_classifiers();
  CHECK(emit_csv(empty) == "s,t,A&B&C,fullsep-ghz,region:R,region:H2,region:fullsep\n");

  GridSpec grid;
  grid.n = 3;
  grid.s_lo = Rational(-1);
  grid.s_hi = Rational(1);
  grid.t_lo = Rational(-1);
  grid.t_hi = Rational(1);
  auto tbl = scan(grid, std::vector<Classifier>{Classifier::member(ConeTag::A),
                                                Classifier::region_of(RegionTag::R)},
                  kExact);
  std::string csv = emit_csv(tbl);
  CHECK(csv.find("s,t,A,region:R\n") == 0);
  CHECK(csv.find("0,0,IN,IN\n") != std::string::npos);
  CHECK(csv.find("-1,-1,OUT,OUT\n") != std::string::npos);
  CHECK(csv.find("1,0,BOUNDARY,BOUNDARY\n") != std::string::npos);
}

TEST_CASE("golden 11x11 csv fixture") {
  GridSpec grid;
  grid.n = 11;
  auto tbl = scan(grid, figure1_classifiers(), kExact);
  std::string csv = emit_csv(tbl);
  std::string golden = read_file(std::string(XSEP_TEST_DATA_DIR) + "/slice_11x11.csv");
  CHECK(csv == golden);
}

TEST_CASE("svg emission is deterministic and timestamp-free") {
  GridSpec grid;
  grid.n = 41;
  auto tbl = scan(grid, figure1_classifiers(), kExact);
  std::string svg1 = emit_svg(tbl, Palette::figure1());
  std::string svg2 = emit_svg(tbl, Palette::figure1());
  CHECK(svg1 == svg2);
  CHECK(svg1.find("<svg") != std::string::npos);
  CHECK(svg1.find("polygon") != std::string::npos);
  CHECK(svg1.rfind("</svg>\n") == svg1.size() - 7);

  auto tbl2 = scan(grid, figure2_classifiers(), kExact);
  std::string svg3 = emit_svg(tbl2, Palette::figure2());
  CHECK(svg3.find("#4f9e57") != std::string::npos);  // full separability layer present
}
