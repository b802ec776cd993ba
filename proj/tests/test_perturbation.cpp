#include <catch2/catch_amalgamated.hpp>

#include "phgscat/perturb.hpp"

using namespace phgscat;

namespace {

using S = GaussianRational;
using BF = BoundaryFunction<S>;

MetricExpansion flat(int n, int J = 8) {
  RationalMatrix h0(n);
  for (int i = 0; i < n; ++i) h0(i, i) = Rational(1);
  return MetricExpansion(n, h0, {}, J);
}

PerturbationSpec basic_spec(int k, int m) {
  BoundaryTensor<S> L(2);
  L.set(0, 0, BF(2, S(1)));
  return {flat(2), L, k, m};
}

}  // namespace

TEST_CASE("difference of identical operators is zero") {
  BoundaryTensor<S> L(2);  // zero tensor
  PerturbationSpec spec{flat(2), L, 1, 0};
  CHECK(operator_difference<S>(spec, 4).is_zero());
}

TEST_CASE("leading block of a first-order log perturbation") {
  PerturbationSpec spec = basic_spec(1, 1);
  int J = 4;
  auto E = leading_block(operator_difference<S>(spec, J), 1, 1);

  // exactly two entries: the scalar k(k-n)/4 Tr = -1/4 and (x d_1)^2 with
  // coefficient H_11 = 1
  REQUIRE(E.size() == 2);
  std::vector<int> zero{0, 0}, b11{2, 0};
  REQUIRE(E.count({0, zero}) == 1);
  REQUIRE(E.count({0, b11}) == 1);
  CHECK(E.at({0, zero}) == BF(2, S(Rational(-1, 4))));
  CHECK(E.at({0, b11}) == BF(2, S(1)));

  ClosedFormLeading<S> cf = closed_form_leading<S>(spec);
  CHECK(E == cf.block);
  CHECK(cf.T == BF(2, S(1)));
  CHECK(cf.H(0, 0) == BF(2, S(1)));
  CHECK(cf.H(1, 1).is_zero());
}

TEST_CASE("scalar term vanishes exactly at k = n") {
  PerturbationSpec spec = basic_spec(2, 1);
  auto E = leading_block(operator_difference<S>(spec, 5), 2, 1);
  std::vector<int> zero{0, 0};
  CHECK(E.count({0, zero}) == 0);
  ClosedFormLeading<S> cf = closed_form_leading<S>(spec);
  CHECK(cf.scalar.is_zero());
  CHECK(E == cf.block);
}

TEST_CASE("pure radial part matches the three-term expression") {
  for (auto [k, m] : std::vector<std::pair<int, int>>{{1, 0}, {1, 1}, {2, 1}, {3, 2}}) {
    PerturbationSpec spec = basic_spec(k, m);
    int J = k + 3;
    PhgSeries<S> engine = operator_difference<S>(spec, J).coeff(0, {0, 0});
    CHECK(d1_three_term<S>(spec, J) == engine);
  }
}

TEST_CASE("nontrivial boundary metric enters through its inverse") {
  RationalMatrix h0(2);
  h0(0, 0) = Rational(4);
  h0(1, 1) = Rational(1);
  MetricExpansion g1(2, h0, {}, 8);
  BoundaryTensor<S> L(2);
  L.set(0, 0, BF(2, S(1)));
  PerturbationSpec spec{g1, L, 1, 0};
  ClosedFormLeading<S> cf = closed_form_leading<S>(spec);
  // H = h0^{-1} L h0^{-1}: (1/4) * 1 * (1/4)
  CHECK(cf.H(0, 0) == BF(2, S(Rational(1, 16))));
  CHECK(cf.T == BF(2, S(Rational(1, 4))));
  auto E = leading_block(operator_difference<S>(spec, 4), 1, 0);
  CHECK(E == cf.block);
}

TEST_CASE("uniqueness bookkeeping for the modified operator difference") {
  BoundaryTensor<S> zero(2);
  BoundaryFunction<S> zf(2);
  MsoDifferenceGroups g0 = mso_difference_groups(zero, zf, 2, 1, 2);
  CHECK(g0.concludes_L_zero(true));
  CHECK_FALSE(g0.concludes_L_zero(false));  // needs nonzero kernel constants

  BoundaryTensor<S> L(2);
  L.set(0, 0, BF(2, S(1)));
  MsoDifferenceGroups g1 =
      mso_difference_groups(L, L.trace_against(RationalMatrix(2)), 2, 1, 2);
  CHECK_FALSE(g1.group_higher_zero);

  // wrong exponent or log power never concludes
  MsoDifferenceGroups g2 = mso_difference_groups(zero, zf, 1, 1, 2);
  CHECK_FALSE(g2.concludes_L_zero(true));
  MsoDifferenceGroups g3 = mso_difference_groups(zero, zf, 2, 0, 2);
  CHECK_FALSE(g3.concludes_L_zero(true));
}

TEST_CASE("merging a perturbation into an existing correction") {
  RationalMatrix h0(2);
  h0(0, 0) = Rational(1);
  h0(1, 1) = Rational(1);
  BoundaryTensor<S> A(2);
  A.set(0, 0, BF(2, S(1)));
  MetricExpansion g1(2, h0, {{1, 1, A}}, 6);
  BoundaryTensor<S> L(2);
  L.set(0, 0, BF(2, S(2)));
  PerturbationSpec spec{g1, L, 1, 1};
  MetricExpansion g2 = spec.g2();
  REQUIRE(g2.corrections().size() == 1);
  CHECK(g2.corrections()[0].tensor(0, 0) == BF(2, S(3)));
}
