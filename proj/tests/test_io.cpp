#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "xsep/io.hpp"
#include "xsep/slice.hpp"

using namespace xsep;
using io::json;

TEST_CASE("full x-matrix format") {
  json j = json::parse(R"({
    "a": [1, 2, 0, 1],
    "b": [1, 2, 0, 1],
    "z": [[1, 0], [0, 0], [0, 0], [1, 0]],
    "scale": "1/8"
  })");
  XMat<Rational> m = io::xmatrix_from_json<Rational>(j);
  CHECK(m == rho_st(Rational(1), Rational(0)));
}

TEST_CASE("ghz shorthand format") {
  json j = json::parse(R"({"a": ["1/8","1/8","1/8","1/8"], "c": [0, 0, 0, 0]})");
  XMat<Rational> m = io::xmatrix_from_json<Rational>(j);
  CHECK(m == rho_st(Rational(0), Rational(0)));
}

TEST_CASE("decimal strings parse exactly") {
  json j = json::parse(R"({"a": [0.125, 0.125, 0.125, 0.125], "c": ["0.1", "-0.1", 0, 0]})");
  XMat<Rational> m = io::xmatrix_from_json<Rational>(j);
  CHECK(m.a[0] == Rational(1, 8));
  CHECK(m.z[0].re == Rational(1, 10));
  CHECK(m.z[1].re == Rational(-1, 10));
}

TEST_CASE("float mode accepts the same files") {
  json j = json::parse(R"({"a": [1, 2, 0, 1], "c": ["1","0","0","1"], "scale": "0.125"})");
  XMat<double> m = io::xmatrix_from_json<double>(j);
  CHECK(m.a[1] == 0.25);
  CHECK(m.z[0].re == 0.125);
}

TEST_CASE("complex entries as plain reals") {
  json j = json::parse(R"({"a": [1,1,1,1], "b": [1,1,1,1], "z": [1, "1/2", [0, 1], 0]})");
  XMat<Rational> m = io::xmatrix_from_json<Rational>(j);
  CHECK(m.z[0].re == Rational(1));
  CHECK(m.z[1].re == Rational(1, 2));
  CHECK(m.z[2].im == Rational(1));
}

TEST_CASE("malformed files are rejected") {
  CHECK_THROWS_AS(io::xmatrix_from_json<Rational>(json::parse("[]")), IoError);
  CHECK_THROWS_AS(io::xmatrix_from_json<Rational>(json::parse(R"({"a": [1,2,3]})")), IoError);
  CHECK_THROWS_AS(io::xmatrix_from_json<Rational>(json::parse(R"({"a": [1,2,3,"x"]})")), IoError);
  CHECK_THROWS_AS(io::xmatrix_from_json<Rational>(json::parse(R"({"a": [1,2,3,4], "z": [1,2]})")),
                  IoError);
}

TEST_CASE("round trip through json") {
  XMat<Rational> m = rho_st(Rational(-10, 13), Rational(3, 13));
  json j = io::xmatrix_to_json(m);
  XMat<Rational> back = io::xmatrix_from_json<Rational>(j);
  CHECK(back == m);

  XMat<double> mf = rho_st(0.25, -0.5);
  XMat<double> backf = io::xmatrix_from_json<double>(io::xmatrix_to_json(mf));
  CHECK(backf == mf);
}

TEST_CASE("witness serialization carries the dual tag") {
  Witness<Rational> w;
  w.body = modularity_witness<Rational>();
  w.dual = DualCone::dual_of(normalize(parse_expr("(A&B)|(A&C)")));
  json j = io::witness_to_json(w);
  CHECK(j.contains("dual_tag"));
  std::string tag = j["dual_tag"].get<std::string>();
  CHECK(tag.find('*') != std::string::npos);
  XMat<Rational> body = io::xmatrix_from_json<Rational>(j);
  CHECK(body == w.body);
}

TEST_CASE("exactness detection") {
  CHECK(io::all_entries_exact(json::parse(R"({"a": [1, "1/2"], "c": ["0.25"]})")));
  CHECK(!io::all_entries_exact(json::parse(R"({"a": [1, 0.5]})")));
}
