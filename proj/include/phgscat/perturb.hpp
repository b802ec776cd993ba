#ifndef PHGSCAT_PERTURB_HPP
#define PHGSCAT_PERTURB_HPP

#include "phgscat/spectral.hpp"

namespace phgscat {

//! A pair of metrics differing by x^k (ln x)^m L at the boundary metric
//! level: h2 = h1 + x^k (ln x)^m L.
struct PerturbationSpec {
  MetricExpansion g1;
  BoundaryTensor<GaussianRational> L;
  int k = 1;
  int m = 0;

  MetricExpansion g2() const {
    std::vector<MetricCorrection> corr = g1.corrections();
    bool merged = false;
    for (auto& c : corr)
      if (c.j == k && c.l == m) {
        BoundaryTensor<GaussianRational> t(g1.n());
        for (int i = 0; i < g1.n(); ++i)
          for (int j = i; j < g1.n(); ++j) t.set(i, j, c.tensor(i, j) + L(i, j));
        c.tensor = t;
        merged = true;
      }
    if (!merged) corr.push_back({k, m, L});
    return MetricExpansion(g1.n(), g1.h0(), corr, g1.truncation());
  }
};

//! Exact difference of the half-density-conjugated Laplacians.
template <class S>
OperatorSeries<S> operator_difference(const PerturbationSpec& spec, int J) {
  MetricExpansion g2 = spec.g2();
  OperatorSeries<S> p2 = half_density_conjugate(g2, build_laplacian<S>(g2, J), J);
  OperatorSeries<S> p1 = half_density_conjugate(spec.g1, build_laplacian<S>(spec.g1, J), J);
  return p2 - p1;
}

//! The x^k (ln x)^m leading block of an operator: for each derivative
//! monomial (a, beta), the coefficient of x^{k + |beta|} (ln x)^m (the
//! (x d/dx, x d/dy) grading of the normal operator).
template <class S>
std::map<typename OperatorSeries<S>::Key, BoundaryFunction<S>> leading_block(
    const OperatorSeries<S>& P, int k, int m) {
  std::map<typename OperatorSeries<S>::Key, BoundaryFunction<S>> out;
  for (const auto& [key, c] : P.terms()) {
    int order = k;
    for (int b : key.second) order += b;
    if (order > c.truncation()) continue;
    BoundaryFunction<S> v = c.coefficient(order, m);
    if (!v.is_zero()) out[key] = v;
  }
  return out;
}

//! The claimed leading operator: H_ij (x d_i)(x d_j) plus the scalar
//! (k(k-n)/4) T, with H = h1(0)^{-1} L h1(0)^{-1} and T = Tr(h1(0)^{-1} L).
//! The theorem's displayed scalar carries an extra h1^{-1}(0,y) factor that
//! its own derivation does not produce; the harness compares against the
//! derivation form and reports the discrepancy on the statement form.
template <class S>
struct ClosedFormLeading {
  std::map<typename OperatorSeries<S>::Key, BoundaryFunction<S>> block;  // derivation form
  BoundaryFunction<S> scalar;                                           // (k(k-n)/4) T
  BoundaryTensor<S> H;
  BoundaryFunction<S> T;
};

template <class S>
ClosedFormLeading<S> closed_form_leading(const PerturbationSpec& spec) {
  int n = spec.g1.n();
  RationalMatrix h0inv = spec.g1.h0().inverse();
  auto L = spec.L.template map_coeffs<S>(
      [](const GaussianRational& g) { return MetricExpansion::embed<S>(g); });
  // H = h0^{-1} L h0^{-1}
  BoundaryTensor<S> H(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      BoundaryFunction<S> acc(n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          if (h0inv(i, a) == 0 || h0inv(b, j) == 0) continue;
          acc = acc + ring<S>::from_rational(h0inv(i, a) * h0inv(b, j)) * L(a, b);
        }
      H.set(i, j, acc);
    }
  ClosedFormLeading<S> out;
  out.H = H;
  out.T = L.trace_against(h0inv);
  Rational factor = Rational(spec.k) * Rational(spec.k - n) / 4;
  out.scalar = ring<S>::from_rational(factor) * out.T;
  std::vector<int> zero(n, 0);
  if (!out.scalar.is_zero()) out.block[{0, zero}] = out.scalar;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (H(i, j).is_zero()) continue;
      std::vector<int> beta(n, 0);
      beta[i] += 1;
      beta[j] += 1;
      auto it = out.block.find({0, beta});
      if (it == out.block.end()) out.block[{0, beta}] = H(i, j);
      else {
        it->second = it->second + H(i, j);
        if (it->second.is_zero()) out.block.erase(it);
      }
    }
  return out;
}

//! Pure-x part of the conjugated-operator difference at the leading block,
//! checked against the three-term expression
//!   D1 = (1/2) x d_x ln(d2/d1) + (1/4) x^2 d_x^2 ln(d2/d1)
//!        + (1/16) x^2 d_x ln(d2/d1) d_x ln(d2 d1)
//! acting as a multiplication operator (all applied to f with no
//! derivatives left over), where d_i are the half-density weights
//! det(h_i) / x^{2(n+1)}.
template <class S>
PhgSeries<S> d1_three_term(const PerturbationSpec& spec, int J) {
  int n = spec.g1.n();
  MetricExpansion g2 = spec.g2();
  // ln(d2/d1) = ln det h2 - ln det h1 (the x powers cancel)
  PhgSeries<S> l21 = g2.log_det_ratio<S>(J) - spec.g1.log_det_ratio<S>(J);
  // x d_x ln(d2 d1) = x d_x [ln det h2 + ln det h1] - 4(n+1)
  PhgSeries<S> lsum = g2.log_det_ratio<S>(J) + spec.g1.log_det_ratio<S>(J);
  PhgSeries<S> xdx_l21 = l21.x_dx();
  PhgSeries<S> xdx2_l21 = xdx_l21.x_dx() - xdx_l21;  // x^2 d_x^2 = (x d_x)^2 - x d_x
  PhgSeries<S> xdx_lsum = lsum.x_dx() -
                          PhgSeries<S>::constant(n, J, ring<S>::from_rational(Rational(4 * (n + 1))));
  PhgSeries<S> out = ring<S>::from_rational(Rational(1, 2)) * xdx_l21 +
                     ring<S>::from_rational(Rational(1, 4)) * xdx2_l21 +
                     ring<S>::from_rational(Rational(1, 16)) * mul(xdx_l21, xdx_lsum, J);
  return out;
}

//! The binomial table for splitting (ln x')^m = (ln rho' + ln R)^m in the
//! blown-up coordinates, together with the leading source block E.
template <class S>
struct PerturbedRhs {
  std::map<typename OperatorSeries<S>::Key, BoundaryFunction<S>> E;
  std::vector<Rational> binomials;  // B(l, m), l = 0..m
};

template <class S>
PerturbedRhs<S> perturbed_rhs(const PerturbationSpec& spec, int J) {
  PerturbedRhs<S> out;
  out.E = leading_block(operator_difference<S>(spec, J), spec.k, spec.m);
  for (int l = 0; l <= spec.m; ++l) out.binomials.push_back(binomial(spec.m, l));
  return out;
}

//! Symbolic bookkeeping for the modified-scattering-operator difference:
//! the derivative at zeta = n splits into a (ln)^{m+1} group, a nonzero
//! opaque multiple of H, and a (ln)^m group involving H and T.  The only
//! logical use is the k = n, m = 1 step: both groups vanishing with the
//! opaque kernel constants nonzero forces H = 0 and T = 0, hence L = 0.
struct MsoDifferenceGroups {
  int k = 0, m = 0, n = 0;
  bool H_zero = false;
  bool T_zero = false;
  bool group_higher_zero = false;  // coefficient group on (ln)^{m+1}
  bool group_lower_zero = false;   // coefficient group on (ln)^m

  bool concludes_L_zero(bool opaque_constants_nonzero) const {
    return k == n && m == 1 && group_higher_zero && group_lower_zero &&
           opaque_constants_nonzero;
  }
};

inline MsoDifferenceGroups mso_difference_groups(const BoundaryTensor<GaussianRational>& H,
                                                 const BoundaryFunction<GaussianRational>& T,
                                                 int k, int m, int n) {
  MsoDifferenceGroups g;
  g.k = k;
  g.m = m;
  g.n = n;
  g.H_zero = H.is_zero();
  g.T_zero = T.is_zero();
  g.group_higher_zero = g.H_zero;
  g.group_lower_zero = g.H_zero && g.T_zero;
  return g;
}

}  // namespace phgscat

#endif
