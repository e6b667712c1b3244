#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "skl/cyclotomic.hpp"
#include "skl/hbar.hpp"
#include "skl/linalg.hpp"
#include "skl/rational.hpp"

using namespace skl;

TEST_CASE("cyclotomic arithmetic at conductor 12") {
  CycNum z = CycNum::zeta(12);
  CycNum i = z.pow(3);
  CHECK(i * i == CycNum(-1));
  CycNum zeta3 = z.pow(4);
  CHECK((zeta3 * zeta3 + zeta3 + CycNum(1)).is_zero());
  // the reduced power basis has degree phi(12) = 4
  CHECK(z.pow(4) == z * z - CycNum(1));
}

TEST_CASE("inverse and division") {
  CycNum z = CycNum::zeta(12);
  for (const CycNum& v :
       {CycNum(1) + z, z.pow(3) - CycNum(2), CycNum(make_rational(3, 7)),
        z * z + z + CycNum(5)}) {
    CHECK(v * v.inverse() == CycNum(1).embedded(12));
  }
  CHECK_THROWS_AS(CycNum(0).inverse(), Error);
}

TEST_CASE("parse and print round trip") {
  for (const char* s :
       {"0", "1", "-1", "2/3", "z", "z^2 - 1", "-z^3", "z^3 + z^2 - z - 1",
        "(-2)*z^3", "1/2*z + 3"}) {
    CycNum v = parse_cyc(s, 12);
    CHECK(parse_cyc(v.str(), 12) == v);
  }
  CHECK_THROWS_AS(parse_cyc("q + 1", 12), ParseError);
  CHECK_THROWS_AS(parse_cyc("", 12), ParseError);
}

TEST_CASE("parsing always lands at the requested conductor") {
  CycNum v = parse_cyc("1", 12);
  CHECK(v.conductor() == 12);
  // conductor-3 zeta embeds to the fourth power of the conductor-12 zeta
  CycNum w3 = parse_cyc("z", 3);
  CHECK(w3.embedded(12) == CycNum::zeta(12).pow(4));
}

TEST_CASE("embedding is a ring map") {
  CycNum a = CycNum::zeta(3);
  CycNum b = CycNum::zeta(3) + CycNum(2);
  CHECK((a * b).embedded(12) == a.embedded(12) * b.embedded(12));
  CHECK((a + b).embedded(12) == a.embedded(12) + b.embedded(12));
  CHECK_THROWS_AS(CycNum::zeta(12).embedded(3), Error);
}

TEST_CASE("rational construction canonicalizes") {
  CHECK(make_rational(2, 4) == make_rational(1, 2));
  CHECK(make_rational(-3, -6) == make_rational(1, 2));
  CHECK(CycNum(make_rational(6, 3)) == CycNum(2));
}

TEST_CASE("formal-parameter scalars track vanishing order") {
  HbarScalar h = HbarScalar::hbar();
  HbarScalar e = (h * h * h - h * h) / (HbarScalar(2) - h);
  CHECK(e.valuation() == 2);
  CHECK(e.div_hbar(2).eval0() == CycNum(make_rational(-1, 2)));
  HbarRat r(e);
  CHECK(r.regular_at_zero());
  HbarRat pole = HbarRat(HbarScalar(1)) / HbarRat(h);
  CHECK(!pole.regular_at_zero());
}

TEST_CASE("matrix inverse, determinant, kernel") {
  Matrix<CycNum> m(2, 2);
  m.at(0, 0) = CycNum(1);
  m.at(0, 1) = CycNum(2);
  m.at(1, 0) = CycNum(3);
  m.at(1, 1) = CycNum(5);
  CHECK(m.det() == CycNum(-1));
  auto inv = m.inverse();
  REQUIRE(inv.has_value());
  CHECK(*inv * m == Matrix<CycNum>::identity(2));

  Matrix<CycNum> r1(2, 2);
  r1.at(0, 0) = CycNum(1);
  r1.at(0, 1) = CycNum(2);
  r1.at(1, 0) = CycNum(2);
  r1.at(1, 1) = CycNum(4);
  CHECK(r1.rank() == 1);
  auto ker = r1.kernel_basis();
  REQUIRE(ker.size() == 1);
  CHECK((r1 * ker[0]).is_zero_matrix());
  CHECK(!r1.inverse().has_value());
}

TEST_CASE("solve_unique") {
  Matrix<CycNum> m(2, 2);
  m.at(0, 0) = CycNum(2);
  m.at(1, 1) = CycNum(3);
  Matrix<CycNum> rhs(2, 1);
  rhs.at(0, 0) = CycNum(4);
  rhs.at(1, 0) = CycNum(9);
  auto sol = m.solve_unique(rhs);
  REQUIRE(sol.has_value());
  CHECK(sol->at(0, 0) == CycNum(2));
  CHECK(sol->at(1, 0) == CycNum(3));
  // inconsistent system reports no solution
  Matrix<CycNum> sing(2, 2);
  sing.at(0, 0) = CycNum(1);
  sing.at(1, 0) = CycNum(1);
  Matrix<CycNum> bad(2, 1);
  bad.at(0, 0) = CycNum(1);
  bad.at(1, 0) = CycNum(2);
  CHECK(!sing.solve_unique(bad).has_value());
}
