#ifndef PHGSCAT_NORMAL_FORM_HPP
#define PHGSCAT_NORMAL_FORM_HPP

#include "phgscat/metric.hpp"
#include "phgscat/operator.hpp"

namespace phgscat {

using GSeries = PhgSeries<GaussianRational>;

//! |d omega|^2 in the metric h(x): sum hinv^{ij} (d_i omega)(d_j omega),
//! bilinear (not sesquilinear) as appropriate for the real-valued PDE.
inline GSeries grad_square(const SeriesMatrix<GaussianRational>& hinv, const GSeries& omega,
                           int J) {
  int n = hinv.size();
  GSeries out(n, J, BaseTag::Zero,
              LogCap{1, LogCap::clamp_shift(2ll * omega.cap().shift + hinv(0, 0).cap().shift)});
  for (int i = 0; i < n; ++i) {
    GSeries di = omega.partial_y(i);
    if (di.is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      GSeries dj = omega.partial_y(j);
      if (dj.is_zero()) continue;
      out = out + mul(hinv(i, j), mul(di, dj, J), J);
    }
  }
  return out;
}

//! Defect of the candidate boundary defining function x' = x e^{omega} for
//! the metric e^{2u} (dx^2 + h(x))/x^2:
//!   |dx'/x'|^2_g - 1 = e^{-2u} [ (1 + x omega_x)^2 + x^2 |d omega|^2_h ] - 1.
//! We track the numerator form (1 + x omega_x)^2 + x^2 |d omega|^2_h - e^{2u},
//! whose vanishing through J is equivalent.
inline GSeries normal_form_residual(const MetricExpansion& g0, const GSeries& u,
                                    const GSeries& omega, int J) {
  int n = g0.n();
  GSeries one = GSeries::constant(n, J, GaussianRational(1));
  GSeries xox = omega.x_dx();  // x d(omega)/dx
  GSeries lhs = one + GaussianRational(2) * xox + mul(xox, xox, J);
  SeriesMatrix<GaussianRational> hinv = g0.h_inverse_series<GaussianRational>(J);
  GSeries grad = grad_square(hinv, omega, J);
  if (!grad.is_zero()) lhs = lhs + grad.x_shift(2);
  GSeries e2u = series_exp(GaussianRational(2) * u, J);
  return lhs - e2u;
}

//! Substitute x = x' e^{-v(x',y)} into a series, v = O(x').  Exact:
//! x^j -> x'^j e^{-j v}, ln x -> ln x' - v.
inline GSeries substitute_radial(const GSeries& a, const GSeries& v, int J) {
  if (a.tag() != BaseTag::Zero || v.tag() != BaseTag::Zero)
    throw std::invalid_argument("substitute_radial: tagged series");
  if (!v.coefficient(0, 0).is_zero() || v.max_log_at(0) > 0)
    throw std::domain_error("substitute_radial: substitution must be tangent to identity");
  int n = a.dim();
  int lmax = 0;
  for (const auto& [k, f] : a.terms()) lmax = std::max(lmax, k.second);
  GSeries out(n, J, BaseTag::Zero,
              LogCap{1, LogCap::clamp_shift(a.cap().shift +
                                            static_cast<long long>(v.cap().shift) * (J + lmax + 2))});
  for (const auto& [key, f] : a.terms()) {
    auto [j, l] = key;
    if (j > J) continue;
    // x'^j e^{-j v} (ln x' - v)^l f
    GSeries base = series_exp(GaussianRational(Rational(-j)) * v, J);
    GSeries fs = GSeries::from_boundary(f, J, BaseTag::Zero, out.cap());
    base = mul(fs, base, J);
    // expand (ln x' - v)^l binomially; (-v)^r is a series, (ln x')^{l-r} a shift
    GSeries vpow = GSeries::constant(n, J, GaussianRational(1));
    vpow.set_cap(out.cap());
    for (int r = 0; r <= l; ++r) {
      if (r > 0) vpow = mul(vpow, -v, J);
      GSeries term = GaussianRational(binomial(l, r)) * mul(base, vpow, J);
      term = term.log_shift(l - r);
      for (const auto& [k2, f2] : term.terms()) {
        int jj = k2.first + j;
        if (jj <= J) out.add_term(jj, k2.second, f2);
      }
    }
  }
  return out;
}

//! Solve for omega, order by order, so that x' = x e^{omega} is a true
//! boundary defining function for e^{2u} (dx^2 + h)/x^2 through O(x^J),
//! and re-expand the metric in the new coordinate.  Supported class:
//! u polyhomogeneous with u(0) = 0, boundary value omega0 = 0 (nonzero
//! omega0 would require exponentials of boundary data, which leave the
//! exact trig-polynomial ring).
struct NormalFormResult {
  GSeries omega;
  MetricExpansion h_new;
};

inline NormalFormResult normal_form_solve(const MetricExpansion& g0, const GSeries& u,
                                          const BoundaryFunction<GaussianRational>& omega0,
                                          int J) {
  int n = g0.n();
  if (!omega0.is_zero())
    throw std::domain_error("normal_form_solve: nonzero boundary value is outside the exact ring");
  if (!u.coefficient(0, 0).is_zero() || u.max_log_at(0) > 0)
    throw std::domain_error("normal_form_solve: conformal factor must vanish at the boundary");

  int lmax_u = 0;
  for (const auto& [k, f] : u.terms()) lmax_u = std::max(lmax_u, k.second);
  int lcap = (std::max(lmax_u, g0.max_log_power()) + 1) * (J + 2);
  GSeries omega(n, J, BaseTag::Zero, LogCap{1, lcap});

  // Kill residual orders (j, l), l descending; the linear part of the
  // equation contributes 2 j omega_{j,l} + 2(l+1) omega_{j,l+1} at (j,l),
  // everything else at (j,l) involves already-fixed data.
  for (int j = 1; j <= J; ++j) {
    while (true) {
      GSeries r = normal_form_residual(g0, u, omega, J);
      int l = r.max_log_at(j);
      if (l < 0) break;
      auto c = r.coefficient(j, l).scalar_div(GaussianRational(Rational(2 * j)));
      omega.add_term(j, l, -c);
    }
  }

  // Re-expand in x': h_new(x') = e^{2(u + omega)} h(x) at x = x' e^{-w},
  // w the fixed point of w = omega(x' e^{-w}).
  GSeries w = omega;
  for (int it = 0; it < J; ++it) w = substitute_radial(omega, w, J);
  GSeries conf = series_exp(GaussianRational(2) * (substitute_radial(u, w, J) + w), J);

  SeriesMatrix<GaussianRational> h = g0.h_series<GaussianRational>(J);
  std::vector<MetricCorrection> corr;
  std::map<std::pair<int, int>, BoundaryTensor<GaussianRational>> acc;
  for (int i = 0; i < n; ++i)
    for (int k = i; k < n; ++k) {
      GSeries e = mul(conf, substitute_radial(h(i, k), w, J), J);
      for (const auto& [key, f] : e.terms()) {
        if (key.first == 0) continue;  // h0 is unchanged
        auto it = acc.find(key);
        if (it == acc.end()) it = acc.emplace(key, BoundaryTensor<GaussianRational>(n)).first;
        BoundaryTensor<GaussianRational>& t = it->second;
        auto cur = t(i, k);
        t.set(i, k, cur + f);
      }
    }
  for (auto& [key, t] : acc)
    if (!t.is_zero()) corr.push_back({key.first, key.second, t});
  MetricExpansion h_new(n, g0.h0(), corr, J);
  return {omega, h_new};
}

}  // namespace phgscat

#endif
