#ifndef PHGSCAT_MODE_HPP
#define PHGSCAT_MODE_HPP

#include <algorithm>
#include <limits>

#include "phgscat/bessel.hpp"
#include "phgscat/ode.hpp"
#include "phgscat/poisson.hpp"
#include "phgscat/symbol.hpp"

namespace phgscat {

//! One radial scattering problem: the Fourier mode xi of a y-independent
//! metric expansion, at a numeric spectral parameter.
struct ModeProblem {
  MetricExpansion metric;
  std::vector<int> xi;
  std::complex<double> zeta;
  double x_min = 1e-4;
  double x_max = 1.0;
  double tol = 1e-10;
};

//! Numeric radial coefficients: s(x) = x Tr(h^{-1} h') and
//! M(x) = xi . h(x)^{-1} . xi, both as finite (j, l, value) tables.
struct RadialProfile {
  int n = 0;
  std::vector<std::tuple<int, int, std::complex<double>>> s_terms;
  std::vector<std::tuple<int, int, std::complex<double>>> m_terms;

  std::complex<double> s_at(double x, double t) const { return eval(s_terms, x, t); }
  std::complex<double> m_at(double x, double t) const { return eval(m_terms, x, t); }

 private:
  static std::complex<double> eval(
      const std::vector<std::tuple<int, int, std::complex<double>>>& v, double x, double t) {
    std::complex<double> acc = 0.0;
    for (const auto& [j, l, c] : v) acc += c * std::pow(x, j) * std::pow(t, l);
    return acc;
  }
};

inline RadialProfile make_radial_profile(const MetricExpansion& g, const std::vector<int>& xi,
                                         int J) {
  for (const auto& c : g.corrections())
    for (int i = 0; i < g.n(); ++i)
      for (int k = 0; k < g.n(); ++k)
        if (!c.tensor(i, k).is_constant())
          throw std::domain_error("make_radial_profile: metric must be y-independent");
  RadialProfile p;
  p.n = g.n();
  PhgSeries<GaussianRational> s = g.s_series<GaussianRational>(J);
  for (const auto& [key, f] : s.terms())
    p.s_terms.push_back({key.first, key.second, ring<GaussianRational>::to_complex(f.eval_at_origin())});
  SeriesMatrix<GaussianRational> hinv = g.h_inverse_series<GaussianRational>(J);
  std::map<std::pair<int, int>, std::complex<double>> macc;
  for (int i = 0; i < g.n(); ++i)
    for (int k = 0; k < g.n(); ++k) {
      if (xi[i] == 0 || xi[k] == 0) continue;
      for (const auto& [key, f] : hinv(i, k).terms())
        macc[key] += static_cast<double>(xi[i] * xi[k]) *
                     ring<GaussianRational>::to_complex(f.eval_at_origin());
    }
  for (const auto& [key, v] : macc)
    if (std::abs(v) > 0.0) p.m_terms.push_back({key.first, key.second, v});
  return p;
}

//! Right side of the first-order system for u(t), t = ln x:
//!   u'' = (n - s/2) u' + (x^2 M - zeta(n - zeta)) u.
inline std::function<CVec2(double, const CVec2&)> mode_rhs(const RadialProfile& p,
                                                           std::complex<double> zeta) {
  std::complex<double> ind = zeta * (static_cast<double>(p.n) - zeta);
  return [p, zeta, ind](double t, const CVec2& y) -> CVec2 {
    double x = std::exp(t);
    std::complex<double> s = p.s_at(x, t);
    std::complex<double> m = p.m_at(x, t);
    std::complex<double> upp =
        (static_cast<double>(p.n) - 0.5 * s) * y[1] + (x * x * m - ind) * y[0];
    return {y[1], upp};
  };
}

//! Integrate from (t0, y0) visiting each target t in order; returns the
//! state at every target.
inline std::vector<OdeSample> solve_mode_ode(const std::function<CVec2(double, const CVec2&)>& f,
                                             double t0, const CVec2& y0,
                                             const std::vector<double>& targets, double tol) {
  std::vector<OdeSample> out;
  double t = t0;
  CVec2 y = y0;
  for (double tt : targets) {
    auto path = integrate_rk45(f, t, tt, y, tol);
    t = path.back().t;
    y = path.back().y;
    out.push_back({t, y});
  }
  return out;
}

//! Decaying flat-model initial data u = x^{n/2} K_nu(q x) at x0, in the
//! (u, du/dt) variables.
inline CVec2 decaying_initial_data(int n, std::complex<double> zeta, double q, double x0) {
  std::complex<double> nu = zeta - 0.5 * n;
  double z = q * x0;
  std::complex<double> K = bessel_K(nu, z);
  std::complex<double> Kp = bessel_K_prime(nu, z);
  std::complex<double> u = std::pow(x0, 0.5 * n) * K;
  // du/dt = x du/dx = (n/2) u + q x * x^{n/2} K'(q x)
  std::complex<double> ut = 0.5 * n * u + q * x0 * std::pow(x0, 0.5 * n) * Kp;
  return {u, ut};
}

//! Numeric evaluation of a stored expansion at (zeta, x): the xi-mode
//! scalar profile sum p_{j,l}(zeta) x^j (ln x)^l.
inline std::complex<double> branch_profile(const PoissonExpansion& e, const std::vector<int>& xi,
                                           std::complex<double> zeta, double x) {
  std::complex<double> acc = 0.0;
  double t = std::log(x);
  for (const auto& [key, f] : e.series.terms())
    acc += f.coeff(xi).eval(zeta) * std::pow(x, key.first) * std::pow(t, key.second);
  return acc;
}

struct ConnectionPair {
  std::complex<double> a{0.0, 0.0};
  std::complex<double> b{0.0, 0.0};
  double residual = 0.0;   // rms misfit relative to rms |u|
  double condition = 0.0;  // 2x2 normal-equation condition estimate
};

//! Least-squares fit u(x_i) ~ a phi(x_i) + b psi(x_i) for the two branch
//! models phi = x^{n-zeta} F(x), psi = x^zeta G(x).
inline ConnectionPair extract_connection(const std::vector<double>& xs,
                                         const std::vector<std::complex<double>>& us,
                                         const std::function<std::complex<double>(double)>& phi,
                                         const std::function<std::complex<double>(double)>& psi) {
  using C = std::complex<double>;
  C a11 = 0, a12 = 0, a22 = 0, r1 = 0, r2 = 0;
  std::vector<C> ph(xs.size()), ps(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    ph[i] = phi(xs[i]);
    ps[i] = psi(xs[i]);
    a11 += std::conj(ph[i]) * ph[i];
    a12 += std::conj(ph[i]) * ps[i];
    a22 += std::conj(ps[i]) * ps[i];
    r1 += std::conj(ph[i]) * us[i];
    r2 += std::conj(ps[i]) * us[i];
  }
  C det = a11 * a22 - a12 * std::conj(a12);
  if (std::abs(det) == 0.0) throw std::runtime_error("extract_connection: singular fit");
  ConnectionPair cp;
  cp.a = (a22 * r1 - a12 * r2) / det;
  cp.b = (a11 * r2 - std::conj(a12) * r1) / det;
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    num += std::norm(us[i] - cp.a * ph[i] - cp.b * ps[i]);
    den += std::norm(us[i]);
  }
  cp.residual = den > 0 ? std::sqrt(num / den) : std::sqrt(num);
  double tr = std::abs(a11) + std::abs(a22);
  cp.condition = tr * tr / std::abs(det);
  return cp;
}

//! End-to-end numeric scattering value b/a for the flat model: select the
//! decaying solution by Bessel asymptotics at large q x, integrate inward
//! in t = ln x, and fit the two indicial branches on [x_min, ~100 x_min].
struct NumericScattering {
  std::complex<double> value{0.0, 0.0};
  ConnectionPair fit;
  double q = 0.0;
};

inline NumericScattering numeric_scattering(const ModeProblem& p, int branch_truncation = 8) {
  int n = p.metric.n();
  Rational q2r = p.metric.h0().inverse().quadratic_form(p.xi);
  double q = std::sqrt(static_cast<double>(q2r));
  if (q <= 0.0) throw std::domain_error("numeric_scattering: q must be positive");
  if (!p.metric.corrections().empty())
    throw std::domain_error("numeric_scattering: decaying-branch selection needs the flat model");

  RadialProfile prof = make_radial_profile(p.metric, p.xi, branch_truncation);
  double x0 = std::max(p.x_max, 30.0 / q);
  CVec2 y0 = decaying_initial_data(n, p.zeta, q, x0);

  std::vector<double> xs;
  for (int i = 0; i < 10; ++i)
    xs.push_back(p.x_min * std::pow(100.0, i / 9.0));  // [x_min, 100 x_min]
  std::sort(xs.rbegin(), xs.rend());
  std::vector<double> ts;
  for (double x : xs) ts.push_back(std::log(x));
  auto sol = solve_mode_ode(mode_rhs(prof, p.zeta), std::log(x0), y0, ts, p.tol);

  // branch models from the symbolic expansion at numeric zeta
  auto fz = BoundaryFunction<ZetaRational>::mode(n, p.xi);
  PoissonExpansion eF = gz_expand(p.metric, fz, branch_truncation);
  std::complex<double> zF = p.zeta, zG = std::complex<double>(n) - p.zeta;
  auto phi = [&, zF](double x) {
    return std::pow(x, std::complex<double>(n) - zF) * branch_profile(eF, p.xi, zF, x);
  };
  auto psi = [&, zG](double x) {
    return std::pow(x, std::complex<double>(n) - zG) * branch_profile(eF, p.xi, zG, x);
  };
  std::vector<std::complex<double>> us;
  for (const auto& s : sol) us.push_back(s.y[0]);
  NumericScattering out;
  out.fit = extract_connection(xs, us, phi, psi);
  out.value = out.fit.b / out.fit.a;
  out.q = q;
  return out;
}

//! Weighted Wronskian x^{-n} (u1 u2' - u1' u2) in the t variable, constant
//! along the flow for the flat model.
inline std::complex<double> weighted_wronskian(int n, double t, const CVec2& y1, const CVec2& y2) {
  return std::exp(-n * t) * (y1[0] * y2[1] - y1[1] * y2[0]);
}

//! Probe the pole structure of the numeric scattering value near zeta0:
//! fit c/(zeta - zeta0)^p + d over a small sample and return the order p
//! with the best fit among p in {1, .., p_max}.
struct PoleProbe {
  int order = 0;
  std::complex<double> strength{0.0, 0.0};
  double misfit = 0.0;
};

inline PoleProbe pole_probe(const std::vector<std::complex<double>>& zetas,
                            const std::vector<std::complex<double>>& values,
                            std::complex<double> zeta0, int p_max = 3) {
  PoleProbe best;
  best.misfit = std::numeric_limits<double>::infinity();
  for (int p = 1; p <= p_max; ++p) {
    // least squares in (c, d): v_i = c w_i + d, w_i = (zeta_i - zeta0)^{-p}
    using C = std::complex<double>;
    C a11 = 0, a12 = 0, a22 = 0, r1 = 0, r2 = 0;
    std::vector<C> w(zetas.size());
    for (size_t i = 0; i < zetas.size(); ++i) {
      w[i] = std::pow(zetas[i] - zeta0, -p);
      a11 += std::conj(w[i]) * w[i];
      a12 += std::conj(w[i]);
      a22 += 1.0;
      r1 += std::conj(w[i]) * values[i];
      r2 += values[i];
    }
    C det = a11 * a22 - a12 * std::conj(a12);
    if (std::abs(det) == 0.0) continue;
    C c = (a22 * r1 - a12 * r2) / det;
    C d = (a11 * r2 - std::conj(a12) * r1) / det;
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < zetas.size(); ++i) {
      num += std::norm(values[i] - c * w[i] - d);
      den += std::norm(values[i]);
    }
    double mis = std::sqrt(num / std::max(den, 1e-300));
    if (mis < best.misfit) best = {p, c, mis};
  }
  return best;
}

}  // namespace phgscat

#endif
