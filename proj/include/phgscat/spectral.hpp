#ifndef PHGSCAT_SPECTRAL_HPP
#define PHGSCAT_SPECTRAL_HPP

#include "phgscat/metric.hpp"
#include "phgscat/operator.hpp"

namespace phgscat {

//! Indicial polynomial of Delta_g - zeta(n - zeta) at the boundary,
//! evaluated on the exponent eta: -(eta - zeta)(eta - (n - zeta)).
inline ZetaRational indicial_apply(int n, const ZetaRational& eta) {
  ZetaRational z = ZetaRational::zeta();
  ZetaRational nz = ZetaRational(Rational(n)) - z;
  return -((eta - z) * (eta - nz));
}

inline std::pair<ZetaRational, ZetaRational> indicial_roots(int n) {
  ZetaRational z = ZetaRational::zeta();
  return {ZetaRational(Rational(n)) - z, z};
}

//! The tangential Laplacian of h(x) as an x-dependent operator on torus
//! functions (positive spectrum: constant h gives xi.h^{-1}.xi on modes):
//!   Delta_h = -h^{ij} d_i d_j - (d_i h^{ij} + h^{ij} d_i ln sqrt(det h)) d_j.
template <class S>
OperatorSeries<S> tangential_laplacian(const MetricExpansion& g, int J) {
  int n = g.n();
  SeriesMatrix<S> hinv = g.h_inverse_series<S>(J);
  PhgSeries<S> half_logdet =
      ring<S>::from_rational(Rational(1, 2)) * g.log_det_ratio<S>(J);
  OperatorSeries<S> L(n, J);
  Rational half(1, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<int> beta(n, 0);
      beta[i] += 1;
      beta[j] += 1;
      L.add_coeff(0, beta, -hinv(i, j));
      std::vector<int> ej(n, 0);
      ej[j] = 1;
      PhgSeries<S> first = hinv(i, j).partial_y(i) + mul(hinv(i, j), half_logdet.partial_y(i), J);
      L.add_coeff(0, ej, -first);
    }
  return L;
}

//! Delta_g = -(x d/dx)^2 + (n - s/2) x d/dx + x^2 Delta_h, with
//! s = x Tr(h^{-1} dh/dx).
template <class S>
OperatorSeries<S> build_laplacian(const MetricExpansion& g, int J) {
  int n = g.n();
  OperatorSeries<S> P(n, J);
  std::vector<int> zero(n, 0);
  PhgSeries<S> s = g.s_series<S>(J);
  PhgSeries<S> radial1 = PhgSeries<S>::constant(n, J, ring<S>::from_rational(Rational(n))) -
                         ring<S>::from_rational(Rational(1, 2)) * s;
  P.add_coeff(2, zero, -PhgSeries<S>::constant(n, J, ring<S>::one()));
  P.add_coeff(1, zero, radial1);
  OperatorSeries<S> Lh = tangential_laplacian<S>(g, J);
  for (const auto& [key, c] : Lh.terms()) P.add_coeff(key.first, key.second, c.x_shift(2));
  return P;
}

//! D_zeta = x^{-(n-zeta)} (Delta_g - zeta(n-zeta)) x^{n-zeta}, obtained by
//! the exact substitution x d/dx -> x d/dx + (n - zeta).  Expands to
//! -(xd/dx)^2 + (2 zeta - n - s/2) xd/dx - ((n-zeta)/2) s + x^2 Delta_h.
inline OperatorSeries<ZetaRational> build_D_zeta(const MetricExpansion& g, int J) {
  OperatorSeries<ZetaRational> lap = build_laplacian<ZetaRational>(g, J);
  ZetaRational z = ZetaRational::zeta();
  ZetaRational nz = ZetaRational(Rational(g.n())) - z;
  OperatorSeries<ZetaRational> D = lap.shift_xdx(nz);
  D.add_coeff(0, std::vector<int>(g.n(), 0),
              PhgSeries<ZetaRational>::constant(g.n(), J, -(z * nz)));
  return D;
}

//! Closed-form action of D_zeta on the monomial f x^j (ln x)^i.  Six terms:
//! the three indicial-polynomial pieces, the tangential block
//! x^2 Delta_h f - (j/2) s f (the latter absorbing the x d/dx trace
//! contribution, which the expanded operator form splits off), and the two
//! trace corrections in (ln x)^{i-1} and (ln x)^i.  Matches build_D_zeta
//! applied to the monomial, exactly, through the shared truncation.
inline PhgSeries<ZetaRational> d_zeta_monomial(const MetricExpansion& g,
                                               const BoundaryFunction<ZetaRational>& f, int j,
                                               int i, int J) {
  if (j < 0 || i < 0) throw std::invalid_argument("d_zeta_monomial: negative exponents");
  using S = ZetaRational;
  int n = g.n();
  ZetaRational z = ZetaRational::zeta();
  LogCap cap{1, i + 4 * (g.series_cap(J).shift + 2)};
  PhgSeries<S> out(n, J, BaseTag::Zero, cap);

  auto put = [&](int jj, int ll, const BoundaryFunction<S>& bf) {
    if (jj <= J && ll >= 0) out.add_term(jj, ll, bf);
  };

  // j(2 zeta - n - j) f x^j ln^i
  ZetaRational c1 = ZetaRational(Rational(j)) * (ZetaRational(Rational(2)) * z -
                                                 ZetaRational(Rational(n + j)));
  put(j, i, c1 * f);
  // i(2 zeta - n - 2j) f x^j ln^{i-1}
  if (i >= 1) {
    ZetaRational c2 = ZetaRational(Rational(i)) * (ZetaRational(Rational(2)) * z -
                                                   ZetaRational(Rational(n + 2 * j)));
    put(j, i - 1, c2 * f);
  }
  // -i(i-1) f x^j ln^{i-2}
  if (i >= 2) put(j, i - 2, ZetaRational(Rational(-i * (i - 1))) * f);

  // x^j ln^i [ x^2 Delta_h f - (j/2) s f ]
  OperatorSeries<S> Lh = tangential_laplacian<S>(g, J);
  PhgSeries<S> fs = PhgSeries<S>::from_boundary(f, J, BaseTag::Zero, cap);
  PhgSeries<S> s = g.s_series<S>(J);
  PhgSeries<S> gblock =
      Lh.apply(fs, J).x_shift(2) - ZetaRational(Rational(j, 2)) * mul(s, fs, J);
  for (const auto& [k, bf] : gblock.terms()) put(k.first + j, k.second + i, bf);

  // -(i/2) s f x^j ln^{i-1}
  if (i >= 1) {
    PhgSeries<S> t = ZetaRational(Rational(-i, 2)) * mul(s, fs, J);
    for (const auto& [k, bf] : t.terms()) put(k.first + j, k.second + i - 1, bf);
  }
  // -((n - zeta)/2) s f x^j ln^i
  {
    ZetaRational c = (ZetaRational(Rational(n)) - z) * ZetaRational(Rational(-1, 2));
    PhgSeries<S> t = c * mul(s, fs, J);
    for (const auto& [k, bf] : t.terms()) put(k.first + j, k.second + i, bf);
  }
  return out;
}

//! delta^{1/4} P delta^{-1/4} for the half-density weight
//! delta = det h / x^{2(n+1)}.  The pure x power conjugates via the exact
//! substitution x d/dx -> x d/dx + (n+1)/2; the remaining weight
//! w = (det h / det h0)^{1/4} acts by series conjugation.  The constant
//! (det h0)^{1/4} drops out.
template <class S>
OperatorSeries<S> half_density_conjugate(const MetricExpansion& g, const OperatorSeries<S>& P,
                                         int J) {
  // x^{c} P x^{-c} with c = -(n+1)/2 from delta^{1/4} = w x^{-(n+1)/2}:
  // x^{-(n+1)/2} (x d/dx)^a x^{(n+1)/2} = (x d/dx + (n+1)/2)^a
  S c = ring<S>::from_rational(Rational(g.n() + 1, 2));
  OperatorSeries<S> shifted = P.shift_xdx(c);
  PhgSeries<S> w = g.det_ratio_pow<S>(Rational(1, 4), J);
  PhgSeries<S> winv = g.det_ratio_pow<S>(Rational(-1, 4), J);
  // w (shifted (winv . v))
  OperatorSeries<S> Mwinv(g.n(), J);
  Mwinv.set_coeff(0, std::vector<int>(g.n(), 0), winv);
  return shifted.compose(Mwinv, J).left_multiply(w, J);
}

//! Boundary normal operator: freeze each coefficient at x = 0, y = p in the
//! (x d/dx, x d/dy) grading.  A term c(x,y) (x d/dx)^a d^beta contributes
//! through the x^{|beta|} coefficient of c; log terms at that order have no
//! boundary value and are rejected.
template <class S>
OperatorSeries<S> freeze_normal_operator(const OperatorSeries<S>& P) {
  OperatorSeries<S> N(P.dim(), P.truncation());
  for (const auto& [key, c] : P.terms()) {
    if (c.tag() != BaseTag::Zero)
      throw std::domain_error("freeze_normal_operator: tagged coefficient");
    int order = 0;
    for (int b : key.second) order += b;
    if (order > c.truncation()) continue;
    if (c.max_log_at(order) > 0)
      throw std::domain_error("freeze_normal_operator: log coefficient at boundary order");
    S v = c.coefficient(order, 0).eval_at_origin();
    if (ring<S>::is_zero(v)) continue;
    PhgSeries<S> cf(P.dim(), P.truncation(), BaseTag::Zero, c.cap());
    cf.set_term(order, 0, BoundaryFunction<S>(P.dim(), v));
    N.add_coeff(key.first, key.second, cf);
  }
  return N;
}

}  // namespace phgscat

#endif
