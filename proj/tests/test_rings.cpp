#include <catch2/catch_amalgamated.hpp>

#include "phgscat/linalg.hpp"
#include "phgscat/zeta_rational.hpp"

using namespace phgscat;

TEST_CASE("rational string round trip") {
  CHECK(rat_to_string(Rational(3, 4)) == "3/4");
  CHECK(rat_to_string(Rational(-7)) == "-7");
  CHECK(rat_from_string("3/4") == Rational(3, 4));
  CHECK(rat_from_string("-12/8") == Rational(-3, 2));
  CHECK(rat_from_string("5") == Rational(5));
}

TEST_CASE("gaussian rational field operations") {
  GaussianRational a(Rational(1), Rational(1));   // 1 + i
  GaussianRational b(Rational(1), Rational(-1));  // 1 - i
  CHECK(a * b == GaussianRational(2));
  CHECK(a.conj() == b);
  CHECK(a / a == GaussianRational(1));
  CHECK((a / b) * b == a);
  CHECK(GaussianRational::i() * GaussianRational::i() == GaussianRational(-1));
}

TEST_CASE("zeta rational arithmetic stays reduced") {
  ZetaRational z = ZetaRational::zeta();
  ZetaRational one(1);

  SECTION("adding a simple pole to itself") {
    ZetaRational f = one / (ZetaRational(2) * z - ZetaRational(3));
    ZetaRational g = f + f;
    CHECK(g == ZetaRational(2) / (ZetaRational(2) * z - ZetaRational(3)));
  }
  SECTION("common factor cancellation") {
    ZetaRational f = (z - ZetaRational(2)) / (z * z - ZetaRational(4));
    CHECK(f == one / (z + ZetaRational(2)));
  }
  SECTION("multiply-back recovers the numerator") {
    ZetaRational a = (z * z + ZetaRational(1)) / (z - ZetaRational(Rational(1, 2)));
    ZetaRational b = (z + ZetaRational(3)) / (z * z - ZetaRational(2));
    CHECK((a / b) * b == a);
    CHECK(a - a == ZetaRational());
    CHECK((a * b) / a == b);
  }
  SECTION("evaluation") {
    ZetaRational f = one / (z - ZetaRational(2));
    CHECK(f.eval(GaussianRational(3)) == GaussianRational(1));
    CHECK_THROWS_AS(f.eval(GaussianRational(2)), std::domain_error);
    CHECK(std::abs(f.eval(std::complex<double>(4.0, 0.0)) - 0.5) < 1e-15);
  }
}

TEST_CASE("laurent data at a shifted point") {
  ZetaRational z = ZetaRational::zeta();

  SECTION("simple pole") {
    // -1 / (2 (2 zeta - 4)) has residue -1/4 at zeta = 2
    ZetaRational f = ZetaRational(-1) / (ZetaRational(2) * (ZetaRational(2) * z - ZetaRational(4)));
    PoleData pd = pole_data(f, GaussianRational(2));
    CHECK(pd.order == 1);
    CHECK(pd.residue() == GaussianRational(Rational(-1, 4)));
  }
  SECTION("double pole and higher coefficients") {
    ZetaRational d = (z - ZetaRational(2)) * (z - ZetaRational(2));
    ZetaRational f = (z + ZetaRational(1)) / d;
    PoleData pd = pole_data(f, GaussianRational(2), 3);
    CHECK(pd.order == 2);
    CHECK(pd.laurent(-2) == GaussianRational(3));  // (zeta + 1) at zeta = 2
    CHECK(pd.laurent(-1) == GaussianRational(1));
    CHECK(pd.laurent(0) == GaussianRational(0));
  }
  SECTION("regular point gives the value") {
    ZetaRational f = (z + ZetaRational(1)) / (z - ZetaRational(5));
    PoleData pd = pole_data(f, GaussianRational(2));
    CHECK(pd.order == 0);
    CHECK(pd.laurent(0) == f.eval(GaussianRational(2)));
  }
}

TEST_CASE("rational matrices against the cofactor oracle") {
  RationalMatrix m(2);
  m(0, 0) = Rational(2);
  m(0, 1) = Rational(1);
  m(1, 0) = Rational(1);
  m(1, 1) = Rational(3);

  SECTION("determinant and cofactor inverse") {
    Rational det = m.det();
    CHECK(det == Rational(5));
    RationalMatrix inv = m.inverse();
    CHECK(inv(0, 0) == m(1, 1) / det);
    CHECK(inv(0, 1) == -m(0, 1) / det);
    CHECK(inv(1, 0) == -m(1, 0) / det);
    CHECK(inv(1, 1) == m(0, 0) / det);
    RationalMatrix prod = m * inv;
    CHECK(prod(0, 0) == Rational(1));
    CHECK(prod(0, 1) == Rational(0));
    CHECK(prod(1, 1) == Rational(1));
  }
  SECTION("positive definiteness") {
    CHECK(m.is_positive_definite());
    RationalMatrix bad(2);
    bad(0, 0) = Rational(1);
    bad(0, 1) = Rational(2);
    bad(1, 0) = Rational(2);
    bad(1, 1) = Rational(1);
    CHECK_FALSE(bad.is_positive_definite());
  }
  SECTION("quadratic form on integer frequencies") {
    CHECK(m.quadratic_form({1, 0}) == Rational(2));
    CHECK(m.quadratic_form({1, 1}) == Rational(7));  // 2 + 1 + 1 + 3
  }
}
