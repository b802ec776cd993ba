#include <catch2/catch_amalgamated.hpp>

#include "phgscat/spectral.hpp"

using namespace phgscat;

namespace {

MetricExpansion flat(int n, int J = 8) {
  RationalMatrix h0(n);
  for (int i = 0; i < n; ++i) h0(i, i) = Rational(1);
  return MetricExpansion(n, h0, {}, J);
}

using ZS = PhgSeries<ZetaRational>;
using ZF = BoundaryFunction<ZetaRational>;

}  // namespace

TEST_CASE("indicial polynomial values") {
  // n = 2, eta = 1 at zeta = 0: -(1 - 0)(1 - 2) = 1
  ZetaRational v = indicial_apply(2, ZetaRational(1));
  CHECK(v.eval(GaussianRational(0)) == GaussianRational(1));
  // both roots annihilate
  auto [r1, r2] = indicial_roots(3);
  CHECK(indicial_apply(3, r1).is_zero());
  CHECK(indicial_apply(3, r2).is_zero());
}

TEST_CASE("tangential laplacian on a single mode") {
  int J = 4;
  MetricExpansion g = flat(2, J);
  OperatorSeries<ZetaRational> L = tangential_laplacian<ZetaRational>(g, J);
  ZS v(2, J, BaseTag::Zero, LogCap{1, 10});
  v.set_term(0, 0, ZF::mode(2, {2, 1}));
  ZS out = L.apply(v, J);
  // |xi|^2 multiplier, positive convention
  CHECK(out.coefficient(0, 0) == ZF::mode(2, {2, 1}, ZetaRational(5)));
}

TEST_CASE("operator composition obeys the Leibniz rule") {
  int n = 1, J = 4;
  LogCap cap{1, 10};
  // A = x d/dx, B = multiplication by w(x)
  OperatorSeries<ZetaRational> A(n, J);
  ZS one = ZS::constant(n, J, ZetaRational(1));
  A.set_coeff(1, {0}, one);
  ZS w(n, J, BaseTag::Zero, cap);
  w.set_term(0, 0, ZF(n, ZetaRational(1)));
  w.set_term(2, 0, ZF(n, ZetaRational(Rational(1, 3))));
  OperatorSeries<ZetaRational> B(n, J);
  B.set_coeff(0, {0}, w);

  OperatorSeries<ZetaRational> AB = A.compose(B, J);
  ZS v(n, J, BaseTag::Zero, cap);
  v.set_term(1, 1, ZF(n, ZetaRational(2)));
  // (A o B) v must equal A(w v)
  ZS lhs = AB.apply(v, J);
  ZS rhs = mul(w, v, J).x_dx();
  CHECK(lhs == rhs);
}

TEST_CASE("substituting a constant into the radial derivative") {
  int n = 1, J = 4;
  OperatorSeries<ZetaRational> A(n, J);
  A.set_coeff(2, {0}, ZS::constant(n, J, ZetaRational(1)));  // (x d/dx)^2
  ZetaRational c(Rational(3, 2));
  OperatorSeries<ZetaRational> S = A.shift_xdx(c);
  ZS v(n, J, BaseTag::Zero, LogCap{1, 10});
  v.set_term(2, 0, ZF(n, ZetaRational(1)));
  // ((x d/dx) + c)^2 x^2 = (2 + 3/2)^2 x^2
  ZS out = S.apply(v, J);
  CHECK(out.coefficient(2, 0) == ZF(n, (ZetaRational(2) + c) * (ZetaRational(2) + c)));
}

TEST_CASE("shifted operator is the conjugated laplacian") {
  // D_zeta applied to 1 for the flat model vanishes identically
  for (int n : {1, 2, 3}) {
    MetricExpansion g = flat(n, 6);
    OperatorSeries<ZetaRational> D = build_D_zeta(g, 6);
    ZS v(n, 6, BaseTag::Zero, LogCap{1, 10});
    v.set_term(0, 0, ZF(n, ZetaRational(1)));
    CHECK(D.apply(v, 6).is_zero());
  }
}

TEST_CASE("half-density conjugation on the flat model is the pure shift") {
  int n = 2, J = 5;
  MetricExpansion g = flat(n, J);
  OperatorSeries<ZetaRational> P = build_laplacian<ZetaRational>(g, J);
  OperatorSeries<ZetaRational> conj = half_density_conjugate(g, P, J);
  OperatorSeries<ZetaRational> expect = P.shift_xdx(ZetaRational(Rational(n + 1, 2)));
  ZS v(n, J, BaseTag::Zero, LogCap{1, 10});
  v.set_term(1, 0, ZF::mode(n, {1, 0}));
  v.set_term(2, 1, ZF(n, ZetaRational(1)));
  CHECK(conj.apply(v, J) == expect.apply(v, J));
}

TEST_CASE("normal operator freeze is idempotent") {
  int J = 5;
  MetricExpansion g = flat(2, J);
  OperatorSeries<ZetaRational> P =
      half_density_conjugate(g, build_laplacian<ZetaRational>(g, J), J);
  OperatorSeries<ZetaRational> N = freeze_normal_operator(P);
  CHECK(freeze_normal_operator(N) == N);
  // the radial part survives freezing
  std::vector<int> zero{0, 0};
  CHECK(!N.coeff(2, zero).is_zero());
}

TEST_CASE("monomial action closed form, one curved example") {
  int J = 5;
  RationalMatrix h0(2);
  h0(0, 0) = Rational(1);
  h0(1, 1) = Rational(1);
  BoundaryTensor<GaussianRational> t(2);
  t.set(0, 0, BoundaryFunction<GaussianRational>(2, GaussianRational(1)));
  MetricExpansion g(2, h0, {{1, 1, t}}, J);
  OperatorSeries<ZetaRational> D = build_D_zeta(g, J);
  for (int j : {0, 1, 2})
    for (int i : {0, 1, 2}) {
      ZF f = ZF::mode(2, {1, 0});
      PhgSeries<ZetaRational> closed = d_zeta_monomial(g, f, j, i, J);
      LogCap cap{1, i + 4 * (g.series_cap(J).shift + 2)};
      PhgSeries<ZetaRational> v(2, J, BaseTag::Zero, cap);
      v.set_term(j, i, f);
      CHECK(closed == D.apply(v, J));
    }
}
