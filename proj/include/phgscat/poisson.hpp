#ifndef PHGSCAT_POISSON_HPP
#define PHGSCAT_POISSON_HPP

#include "phgscat/spectral.hpp"

namespace phgscat {

//! Formal expansion F = sum p_{j,l}(zeta) f x^j (ln x)^l with p_{0,0} = f,
//! built so that D_zeta F vanishes through the truncation order.  The full
//! generalized eigenfunction is x^{n-zeta} F.
struct PoissonExpansion {
  int n = 0;
  int truncation = 0;
  BoundaryFunction<ZetaRational> source;
  PhgSeries<ZetaRational> series;  // Zero-based; multiply by x^{n-zeta} to get the solution

  BoundaryFunction<ZetaRational> coefficient(int j, int l) const {
    return series.coefficient(j, l);
  }
};

//! Iterative construction: kill the residual of D_zeta order by order,
//! top log power first.  Killing (j, l) divides by the indicial factor
//! j(2 zeta - n - j), so p_{j,l} picks up poles exactly at
//! zeta = (n + j')/2, j' <= j.
inline PoissonExpansion gz_expand(const MetricExpansion& g,
                                  const BoundaryFunction<ZetaRational>& f, int J) {
  using S = ZetaRational;
  int n = g.n();
  OperatorSeries<S> D = build_D_zeta(g, J);
  ZetaRational z = ZetaRational::zeta();

  LogCap cap{1, (g.max_log_power() + 1) * (J + 2)};
  PhgSeries<S> F(n, J, BaseTag::Zero, cap);
  F.set_term(0, 0, f);
  PhgSeries<S> R = D.apply(F, J);

  for (int j = 1; j <= J; ++j) {
    ZetaRational divisor =
        ZetaRational(Rational(j)) * (ZetaRational(Rational(2)) * z - ZetaRational(Rational(n + j)));
    while (true) {
      int l = R.max_log_at(j);
      if (l < 0) break;
      BoundaryFunction<S> c =
          ZetaRational(Rational(-1)) * R.coefficient(j, l).scalar_div(divisor);
      PhgSeries<S> corr(n, J, BaseTag::Zero, cap);
      corr.set_term(j, l, c);
      F.add_term(j, l, c);
      R = R + D.apply(corr, J);
    }
  }
  return {n, J, f, F};
}

//! Verification hook: the residual of the expansion, exactly.
inline PhgSeries<ZetaRational> gz_residual(const MetricExpansion& g, const PoissonExpansion& e,
                                           int J) {
  return build_D_zeta(g, J).apply(e.series, J);
}

//! Exceptional-point log coefficient: at zeta0 = (n + l)/2 the indicial
//! division at step l breaks down and the limiting solution acquires
//! x^{zeta0} (ln x)^{m_l + 1} G with
//!   G|_{x=0} = -2 [ (zeta - zeta0) p_{l, m_l} ]|_{zeta -> zeta0},
//! an exact Laurent residue per Fourier mode (p_{l, m_l} has at most a
//! simple pole there).
inline BoundaryFunction<GaussianRational> exceptional_log_coefficient(
    const MetricExpansion& g, const BoundaryFunction<ZetaRational>& f, int l) {
  if (l < 1) throw std::invalid_argument("exceptional_log_coefficient: l must be >= 1");
  PoissonExpansion e = gz_expand(g, f, l);
  int ml = std::max(0, e.series.max_log_at(l));
  BoundaryFunction<ZetaRational> p = e.coefficient(l, ml);
  GaussianRational zeta0(Rational(g.n() + l, 2));
  BoundaryFunction<GaussianRational> out(g.n());
  for (const auto& [xi, c] : p.terms()) {
    PoleData pd = pole_data(c, zeta0, 2);
    if (pd.order > 1)
      throw std::domain_error("exceptional_log_coefficient: pole order exceeds 1");
    if (pd.order == 1) out.add_term(xi, GaussianRational(-2) * pd.residue());
  }
  return out;
}

//! Pole data of one stored coefficient at a given exceptional point, per
//! Fourier mode: (pole order, leading Laurent coefficient).
struct CoefficientPole {
  std::vector<int> frequency;
  int order = 0;
  GaussianRational leading;
};

inline std::vector<CoefficientPole> coefficient_poles(const BoundaryFunction<ZetaRational>& p,
                                                      const GaussianRational& zeta0) {
  std::vector<CoefficientPole> out;
  for (const auto& [xi, c] : p.terms()) {
    PoleData pd = pole_data(c, zeta0, 4);
    out.push_back({xi, pd.order, pd.laurent(-pd.order)});
  }
  return out;
}

//! Einstein-form recursion at the integer point zeta = n (even-in-x metric
//! below order n): F_j = F_{j-1} + x^j [x^{-j} Lap F_{j-1}]|_0 / (j(j-n))
//! for j < n, then the obstruction p_n = [x^{-n} Lap F_{n-1}]|_0 / n, which
//! continues the solution as p_n x^n ln x.
struct EinsteinLogResult {
  PhgSeries<GaussianRational> F;  // F_{n-1}: polynomial part, no logs
  BoundaryFunction<GaussianRational> p_n;
};

inline EinsteinLogResult einstein_log_recursion(const MetricExpansion& g,
                                                const BoundaryFunction<GaussianRational>& f,
                                                int J) {
  using S = GaussianRational;
  int n = g.n();
  if (J < n + 1) J = n + 1;
  for (const auto& c : g.corrections())
    if (c.j < n && (c.j % 2 == 1 || c.l > 0))
      throw std::domain_error(
          "einstein_log_recursion: metric has a non-even or log correction below order n");
  OperatorSeries<S> lap = build_laplacian<S>(g, J);
  LogCap cap{1, (g.max_log_power() + 1) * (J + 2)};
  PhgSeries<S> F(n, J, BaseTag::Zero, cap);
  F.set_term(0, 0, f);
  for (int j = 1; j < n; ++j) {
    PhgSeries<S> R = lap.apply(F, J);
    if (R.max_log_at(j) > 0)
      throw std::domain_error("einstein_log_recursion: unexpected log term below order n");
    BoundaryFunction<S> r = R.coefficient(j, 0);
    if (r.is_zero()) continue;
    F.add_term(j, 0, r.scalar_div(S(Rational(j * (j - n)))));
  }
  PhgSeries<S> R = lap.apply(F, J);
  BoundaryFunction<S> pn = R.coefficient(n, 0).scalar_div(S(Rational(n)));
  return {F, pn};
}

//! Residual of the log-extended solution F_{n-1} + p_n x^n ln x; vanishes
//! through order x^n (the x^n ln x obstruction is exactly cancelled).
inline PhgSeries<GaussianRational> einstein_log_residual(const MetricExpansion& g,
                                                         const EinsteinLogResult& r, int J) {
  using S = GaussianRational;
  int n = g.n();
  OperatorSeries<S> lap = build_laplacian<S>(g, J);
  PhgSeries<S> Fn = r.F;
  Fn.add_term(n, 1, r.p_n);
  return lap.apply(Fn, J);
}

//! Report for the residue-trace proposition on a single-correction metric
//! h = h0 + x^k (ln x)^{m} h_{k,m}, source f = 1.  The engine value is the
//! leading Laurent coefficient of p_{l, m_l}(zeta) at zeta0 = (n + l)/2.
//! The claimed closed form lives at l = k + 1 with constant
//! l^{m} k ((n-k)/2 - 1/2)/4 times Tr(h0^{-1} h_{k,m}); the engine also
//! reports the adjacent order l = k, where the iterative division actually
//! inserts the singular factor.
struct ResidueTraceReport {
  int n = 0, k = 0, m = 0;
  GaussianRational trace;  // Tr(h0^{-1} h_{k,m})
  // at l = k (engine pole location)
  int engine_order_at_k = 0;
  GaussianRational engine_leading_at_k;
  // at l = k + 1 (claimed location)
  int engine_order_at_k1 = 0;
  GaussianRational engine_leading_at_k1;
  Rational paper_constant;           // l^m k ((n-k)/2 - 1/2)/4 with l = k+1
  GaussianRational paper_value;      // paper_constant * trace
  bool engine_matches_paper = false;
};

inline ResidueTraceReport residue_trace_check(const MetricExpansion& g) {
  if (g.corrections().size() != 1)
    throw std::invalid_argument("residue_trace_check: metric must have exactly one correction");
  const MetricCorrection& c = g.corrections()[0];
  int n = g.n(), k = c.j, m = c.l;
  ResidueTraceReport rep;
  rep.n = n;
  rep.k = k;
  rep.m = m;
  RationalMatrix h0inv = g.h0().inverse();
  rep.trace = c.tensor.trace_against(h0inv).eval_at_origin();

  BoundaryFunction<ZetaRational> one(n, ZetaRational(1));
  PoissonExpansion e = gz_expand(g, one, k + 1);
  std::vector<int> zero_freq(n, 0);

  auto probe = [&](int l, int& order, GaussianRational& lead) {
    int ml = std::max(0, e.series.max_log_at(l));
    ZetaRational p = e.coefficient(l, ml).coeff(zero_freq);
    GaussianRational zeta0(Rational(n + l, 2));
    if (p.is_zero()) {
      order = 0;
      lead = GaussianRational(0);
      return;
    }
    PoleData pd = pole_data(p, zeta0, 4);
    order = pd.order;
    lead = pd.order > 0 ? pd.laurent(-pd.order) : pd.laurent(0);
  };
  probe(k, rep.engine_order_at_k, rep.engine_leading_at_k);
  probe(k + 1, rep.engine_order_at_k1, rep.engine_leading_at_k1);

  int l = k + 1;
  Rational lm(1);
  for (int i = 0; i < m; ++i) lm *= l;
  rep.paper_constant = lm * k * (Rational(n - k, 2) - Rational(1, 2)) / 4;
  rep.paper_value = GaussianRational(rep.paper_constant) * rep.trace;
  rep.engine_matches_paper = (rep.engine_leading_at_k1 == rep.paper_value);
  return rep;
}

}  // namespace phgscat

#endif
