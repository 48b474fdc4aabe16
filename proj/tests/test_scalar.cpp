#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "xsep/complex.hpp"
#include "xsep/scalar.hpp"

using namespace xsep;

TEST_CASE("exact square roots") {
  CHECK(num::sqrt_of(Rational(36, 25)) == Rational(6, 5));
  CHECK(num::sqrt_of(Rational(0)) == Rational(0));
  CHECK(num::sqrt_of(Rational(1)) == Rational(1));
  CHECK(num::sqrt_of(Rational(49)) == Rational(7));
  CHECK_THROWS_AS(num::sqrt_of(Rational(2)), InexactValue);
  CHECK_THROWS_AS(num::sqrt_of(Rational(-1)), InexactValue);
  CHECK_THROWS_AS(num::sqrt_of(Rational(1, 3)), InexactValue);
}

TEST_CASE("rational parsing") {
  CHECK(num::parse_rational("3/4") == Rational(3, 4));
  CHECK(num::parse_rational("-10/13") == Rational(-10, 13));
  CHECK(num::parse_rational("7") == Rational(7));
  CHECK(num::parse_rational("-7") == Rational(-7));
  CHECK(num::parse_rational("0.25") == Rational(1, 4));
  CHECK(num::parse_rational("-0.1") == Rational(-1, 10));
  CHECK(num::parse_rational("2.5e-3") == Rational(1, 400));
  CHECK(num::parse_rational("1e3") == Rational(1000));
  CHECK_THROWS_AS(num::parse_rational(""), IoError);
  CHECK_THROWS_AS(num::parse_rational("abc"), IoError);
  CHECK_THROWS_AS(num::parse_rational("1/0"), IoError);
}

TEST_CASE("rational formatting") {
  CHECK(num::str_of(Rational(3, 4)) == "3/4");
  CHECK(num::str_of(Rational(-10, 13)) == "-10/13");
  CHECK(num::str_of(Rational(5)) == "5");
  CHECK(num::str_of(Rational(0)) == "0");
  CHECK(num::str_of(Rational(2, 4)) == "1/2");  // canonical form
}

TEST_CASE("doubles convert to rationals exactly") {
  CHECK(Rational(0.5) == Rational(1, 2));
  CHECK(Rational(0.75) == Rational(3, 4));
  CHECK(num::to_double(Rational(0.1)) == 0.1);
}

TEST_CASE("complex arithmetic and phases") {
  Cx<Rational> z{Rational(3), Rational(4)};
  CHECK(z.norm2() == Rational(25));
  CHECK(abs_of(z) == Rational(5));
  Cx<Rational> u = unit_phase(z);
  CHECK(u.re == Rational(3, 5));
  CHECK(u.im == Rational(4, 5));
  CHECK(unit_phase(Cx<Rational>{Rational(0), Rational(0)}).re == Rational(1));
  CHECK(unit_phase(Cx<Rational>{Rational(-2), Rational(0)}).re == Rational(-1));

  Cx<double> zd{1.0, 1.0};
  CHECK(abs_of(zd) == doctest::Approx(std::sqrt(2.0)));
  Cx<double> ud = unit_phase(zd);
  CHECK(ud.re == doctest::Approx(1.0 / std::sqrt(2.0)));

  Cx<Rational> w{Rational(1), Rational(-2)};
  CHECK((z * w.conj()).re == Rational(-5));  // (3+4i)(1+2i)
  CHECK((z * w.conj()).im == Rational(10));
  CHECK((z + w).re == Rational(4));
  CHECK((z - w).im == Rational(6));
}
