#include <catch2/catch_amalgamated.hpp>

#include "phgscat/poisson.hpp"

using namespace phgscat;

namespace {

MetricExpansion flat(int n, int J = 8) {
  RationalMatrix h0(n);
  for (int i = 0; i < n; ++i) h0(i, i) = Rational(1);
  return MetricExpansion(n, h0, {}, J);
}

using ZF = BoundaryFunction<ZetaRational>;
using GF = BoundaryFunction<GaussianRational>;

}  // namespace

TEST_CASE("flat expansion against the two-term radial recursion") {
  // For h = h0 flat, the coefficients obey j(2 zeta - n - j) c_j = q^2 c_{j-2}
  // with c_0 = 1 (independent derivation of the same ODE recursion).
  int n = 2, J = 6;
  MetricExpansion g = flat(n, J);
  std::vector<int> xi{1, 1};
  PoissonExpansion e = gz_expand(g, ZF::mode(n, xi), J);
  ZetaRational z = ZetaRational::zeta();
  ZetaRational q2(Rational(2));

  std::vector<ZetaRational> c(J + 1);
  c[0] = ZetaRational(1);
  for (int j = 1; j <= J; ++j) {
    if (j % 2 == 1) {
      c[j] = ZetaRational();
      continue;
    }
    ZetaRational div = ZetaRational(Rational(j)) *
                       (ZetaRational(2) * z - ZetaRational(Rational(n + j)));
    c[j] = -(q2 * c[j - 2]) / div;
  }
  for (int j = 0; j <= J; ++j) {
    CHECK(e.coefficient(j, 0).coeff(xi) == c[j]);
    CHECK(e.series.max_log_at(j) <= 0);
  }
}

TEST_CASE("first-order correction coefficient in closed form") {
  // h = h0 + x h_1: p_{1,0} = (n - zeta) Tr(h0^{-1} h_1) / (2 (2 zeta - n - 1))
  int n = 2, J = 3;
  RationalMatrix h0(n);
  h0(0, 0) = Rational(1);
  h0(1, 1) = Rational(1);
  BoundaryTensor<GaussianRational> t(n);
  t.set(0, 0, GF(n, GaussianRational(1)));
  MetricExpansion g(n, h0, {{1, 0, t}}, J);
  PoissonExpansion e = gz_expand(g, ZF(n, ZetaRational(1)), J);
  ZetaRational z = ZetaRational::zeta();
  ZetaRational expect = (ZetaRational(Rational(n)) - z) /
                        (ZetaRational(2) * (ZetaRational(2) * z - ZetaRational(Rational(n + 1))));
  CHECK(e.coefficient(1, 0).coeff({0, 0}) == expect);
  CHECK(gz_residual(g, e, J).is_zero());
}

TEST_CASE("expansion residual vanishes with logs present") {
  int n = 2, J = 6;
  RationalMatrix h0(n);
  h0(0, 0) = Rational(1);
  h0(1, 1) = Rational(1);
  BoundaryTensor<GaussianRational> t(n);
  t.set(0, 0, GF(n, GaussianRational(1)));
  MetricExpansion g(n, h0, {{1, 1, t}}, J);
  PoissonExpansion e = gz_expand(g, ZF::mode(n, {1, 0}), J);
  CHECK(gz_residual(g, e, J).is_zero());
  // log powers actually appear
  bool has_log = false;
  for (const auto& [key, f] : e.series.terms()) has_log = has_log || key.second > 0;
  CHECK(has_log);
}

TEST_CASE("exceptional log coefficient equals the integer-point obstruction") {
  int n = 2;
  MetricExpansion g = flat(n, n + 1);
  std::vector<int> xi{1, 0};
  GF G = exceptional_log_coefficient(g, ZF::mode(n, xi), n);
  EinsteinLogResult er = einstein_log_recursion(g, GF::mode(n, xi), n + 1);
  CHECK(G == er.p_n);
  // frozen value: q^2 = 1 gives p_2 = 1/2 on the mode
  CHECK(er.p_n.coeff(xi) == GaussianRational(Rational(1, 2)));

  SECTION("log-extended solution kills the obstruction") {
    PhgSeries<GaussianRational> r = einstein_log_residual(g, er, n + 1);
    for (const auto& [key, f] : r.terms()) CHECK(key.first > n);
  }
  SECTION("recursion rejects odd corrections below n") {
    RationalMatrix h0(2);
    h0(0, 0) = Rational(1);
    h0(1, 1) = Rational(1);
    BoundaryTensor<GaussianRational> t(2);
    t.set(0, 0, GF(2, GaussianRational(1)));
    MetricExpansion bad(2, h0, {{1, 0, t}}, 4);
    CHECK_THROWS_AS(einstein_log_recursion(bad, GF::mode(2, xi), 3), std::domain_error);
  }
}

TEST_CASE("laurent probe of the singular coefficient") {
  // single correction x^2 ln x with tensor = identity, n = 3: the division
  // at order l = k inserts a simple pole with residue ((n-k)/2) Tr / 4
  int n = 3, J = 3;
  RationalMatrix h0(n);
  for (int i = 0; i < n; ++i) h0(i, i) = Rational(1);
  BoundaryTensor<GaussianRational> t(n);
  for (int i = 0; i < n; ++i) t.set(i, i, GF(n, GaussianRational(1)));
  MetricExpansion g(n, h0, {{2, 1, t}}, J);
  ResidueTraceReport rep = residue_trace_check(g);
  CHECK(rep.trace == GaussianRational(3));
  CHECK(rep.engine_order_at_k == 1);
  CHECK(rep.engine_leading_at_k == GaussianRational(Rational(3, 8)));  // ((n-k)/2) Tr / 4
  CHECK(rep.engine_order_at_k1 == 0);
  CHECK(rep.engine_leading_at_k1 == GaussianRational(0));
}

TEST_CASE("coefficient pole tables are per mode") {
  int n = 2, J = 2;
  MetricExpansion g = flat(n, J);
  PoissonExpansion e = gz_expand(g, ZF::mode(n, {1, 0}), J);
  GaussianRational zeta0(Rational(n + 2, 2));
  auto poles = coefficient_poles(e.coefficient(2, 0), zeta0);
  REQUIRE(poles.size() == 1);
  CHECK(poles[0].frequency == std::vector<int>{1, 0});
  CHECK(poles[0].order == 1);
  CHECK(poles[0].leading == GaussianRational(Rational(-1, 4)));
}

TEST_CASE("input validation") {
  MetricExpansion g = flat(2, 4);
  CHECK_THROWS(exceptional_log_coefficient(g, ZF::mode(2, {1, 0}), 0));
  CHECK_THROWS(residue_trace_check(g));  // needs exactly one correction
}
