#include <catch2/catch_amalgamated.hpp>

#include "phgscat/series.hpp"

using namespace phgscat;

namespace {

using GS = PhgSeries<GaussianRational>;
using BF = BoundaryFunction<GaussianRational>;

BF gmode(int n, std::vector<int> xi, GaussianRational c = GaussianRational(1)) {
  return BF::mode(n, std::move(xi), std::move(c));
}

}  // namespace

TEST_CASE("boundary function convolution against brute force") {
  int n = 2;
  BF a(n);
  a.add_term({1, 0}, GaussianRational(2));
  a.add_term({0, 1}, GaussianRational(Rational(1), Rational(1)));
  BF b(n);
  b.add_term({-1, 0}, GaussianRational(3));
  b.add_term({1, 1}, GaussianRational(Rational(0), Rational(-2)));

  BF prod = a * b;
  // brute force: sum over all frequency pairs
  BF brute(n);
  for (const auto& [xa, ca] : a.terms())
    for (const auto& [xb, cb] : b.terms()) {
      std::vector<int> xi{xa[0] + xb[0], xa[1] + xb[1]};
      brute.add_term(xi, ca * cb);
    }
  CHECK(prod == brute);
}

TEST_CASE("boundary derivatives and the flat laplacian") {
  int n = 2;
  BF f = gmode(n, {2, -1});
  // d/dy_1 e^{i(2, -1).y} = 2i e^{...}
  CHECK(f.partial(0) == gmode(n, {2, -1}, GaussianRational(Rational(0), Rational(2))));
  RationalMatrix h0(2);
  h0(0, 0) = Rational(1);
  h0(1, 1) = Rational(4);
  // positive multiplier xi . h0^{-1} xi = 4 + 1/4
  CHECK(f.flat_laplacian(h0) == gmode(n, {2, -1}, GaussianRational(Rational(17, 4))));
}

TEST_CASE("reality of trig polynomials") {
  int n = 1;
  BF f(n);
  f.add_term({1}, GaussianRational(Rational(1), Rational(2)));
  f.add_term({-1}, GaussianRational(Rational(1), Rational(-2)));
  CHECK(f.is_real());
  f.add_term({2}, GaussianRational(1));
  CHECK_FALSE(f.is_real());
}

TEST_CASE("series calculus on monomials") {
  int n = 1, J = 6;
  LogCap cap{1, 10};

  SECTION("x d/dx on x^2 ln^3 x") {
    GS v(n, J, BaseTag::Zero, cap);
    v.set_term(2, 3, BF(n, GaussianRational(1)));
    GS d = v.x_dx();
    CHECK(d.coefficient(2, 3) == BF(n, GaussianRational(2)));
    CHECK(d.coefficient(2, 2) == BF(n, GaussianRational(3)));
  }
  SECTION("d/dx lowers the power and differentiates the log") {
    GS v(n, J, BaseTag::Zero, cap);
    v.set_term(3, 1, BF(n, GaussianRational(1)));
    GS d = v.d_dx();
    CHECK(d.coefficient(2, 1) == BF(n, GaussianRational(3)));
    CHECK(d.coefficient(2, 0) == BF(n, GaussianRational(1)));
  }
  SECTION("shifts") {
    GS v(n, J, BaseTag::Zero, cap);
    v.set_term(1, 1, BF(n, GaussianRational(5)));
    CHECK(v.x_shift(2).coefficient(3, 1) == BF(n, GaussianRational(5)));
    CHECK(v.log_shift(2).coefficient(1, 3) == BF(n, GaussianRational(5)));
  }
  SECTION("log cap is enforced") {
    GS v(n, J, BaseTag::Zero, LogCap{1, 0});  // l <= j
    CHECK_NOTHROW(v.set_term(2, 2, BF(n, GaussianRational(1))));
    CHECK_THROWS(v.set_term(1, 3, BF(n, GaussianRational(1))));
  }
}

TEST_CASE("series inverses, powers, exp and log round trips") {
  int n = 1, J = 5;
  GS a = GS::constant(n, J, GaussianRational(1));
  a.set_cap(LogCap{1, 30});
  a.add_term(1, 0, BF(n, GaussianRational(Rational(1, 2))));
  a.add_term(2, 1, BF(n, GaussianRational(Rational(-1, 3))));
  GS one = GS::constant(n, J, GaussianRational(1));

  SECTION("invert multiplies back to one") {
    GS inv = series_invert(a, J);
    CHECK(mul(a, inv, J) == one);
  }
  SECTION("square root squares back") {
    GS r = series_pow(a, Rational(1, 2), J);
    CHECK(mul(r, r, J) == a);
  }
  SECTION("exp of log is the identity") {
    CHECK(series_exp(series_log(a, J), J) == a);
  }
  SECTION("exp turns sums into products") {
    GS u(n, J, BaseTag::Zero, LogCap{1, 30});
    u.set_term(1, 0, BF(n, GaussianRational(1)));
    GS v(n, J, BaseTag::Zero, LogCap{1, 30});
    v.set_term(2, 0, BF(n, GaussianRational(Rational(1, 4))));
    CHECK(series_exp(u + v, J) == mul(series_exp(u, J), series_exp(v, J), J));
  }
  SECTION("invert requires an invertible constant term") {
    GS b(n, J, BaseTag::Zero, LogCap{1, 10});
    b.set_term(1, 0, BF(n, GaussianRational(1)));
    CHECK_THROWS_AS(series_invert(b, J), std::domain_error);
  }
}

TEST_CASE("tagged series differentiate with the base exponent") {
  using ZS = PhgSeries<ZetaRational>;
  int n = 3, J = 4;
  ZetaRational z = ZetaRational::zeta();
  ZS v(n, J, BaseTag::NMinusZeta, LogCap{1, 10});
  v.set_term(0, 0, BoundaryFunction<ZetaRational>(n, ZetaRational(1)));
  // x d/dx [x^{n-zeta}] = (n - zeta) x^{n-zeta}
  ZS d = v.x_dx();
  CHECK(d.coefficient(0, 0) ==
        BoundaryFunction<ZetaRational>(n, ZetaRational(Rational(3)) - z));
  CHECK(d.tag() == BaseTag::NMinusZeta);

  SECTION("products allow at most one tagged factor") {
    CHECK_THROWS(mul(v, v, J));
  }
}

TEST_CASE("series multiplication distributes over truncation") {
  int n = 1, J = 4;
  GS a(n, J, BaseTag::Zero, LogCap{1, 10});
  a.set_term(1, 0, BF(n, GaussianRational(2)));
  a.set_term(3, 1, BF(n, GaussianRational(1)));
  GS b(n, J, BaseTag::Zero, LogCap{1, 10});
  b.set_term(2, 0, BF(n, GaussianRational(3)));
  GS p = mul(a, b, J);
  CHECK(p.coefficient(3, 0) == BF(n, GaussianRational(6)));
  // 3 + 2 exceeds the truncation
  CHECK(p.max_log_at(4) == -1);
  CHECK(p.truncation() == J);
}
