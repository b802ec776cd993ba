#ifndef PHGSCAT_SYMBOL_HPP
#define PHGSCAT_SYMBOL_HPP

#include <optional>

#include "phgscat/gamma.hpp"
#include "phgscat/poisson.hpp"

namespace phgscat {

//! Value of the mode-q scattering multiplier, or a pole marker when a
//! Gamma factor sits at a nonpositive integer.
struct SymbolValue {
  bool pole = false;
  std::complex<double> value{0.0, 0.0};
};

//! c(zeta) q^{2 zeta - n} with c(zeta) = 2^{n - 2 zeta} Gamma(n/2 - zeta) /
//! Gamma(zeta - n/2): the flat-model scattering value on the frequency of
//! weight q = |xi|_{h0}.
inline SymbolValue scattering_symbol(int n, std::complex<double> zeta, double q) {
  std::complex<double> nu = zeta - 0.5 * n;
  if (near_gamma_pole(-nu)) return {true, {}};
  if (q == 0.0 && (2.0 * zeta.real() - n) <= 0.0)
    throw std::domain_error("scattering_symbol: q = 0 needs Re(2 zeta - n) > 0");
  if (near_gamma_pole(nu)) return {false, {0.0, 0.0}};  // zero of the symbol
  std::complex<double> v = std::pow(2.0, std::complex<double>(n) - 2.0 * zeta) *
                           gamma_complex(-nu) / gamma_complex(nu);
  if (q == 0.0) return {false, {0.0, 0.0}};
  return {false, v * std::pow(q, 2.0 * zeta - std::complex<double>(n))};
}

//! Exact residue at zeta = n of c(zeta) q^{2 zeta - n} for even n, as a
//! rational in q^2:
//!   Res = -2^{-n} res_Gamma(n/2) / Gamma(n/2) * q^n
//!       = (-1)^{n/2+1} 2^{-n} q^n / ((n/2)! (n/2-1)!).
inline Rational scattering_residue_at_n(int n, const Rational& q_squared) {
  if (n % 2 != 0 || n <= 0) throw std::invalid_argument("scattering_residue_at_n: n must be even");
  int half = n / 2;
  Rational qn(1);
  for (int i = 0; i < half; ++i) qn *= q_squared;
  Rational twon(1);
  for (int i = 0; i < n; ++i) twon *= 2;
  return -(gamma_residue(half) / gamma_integer(half)) / twon * qn;
}

//! Modified scattering operator symbol at the pole zeta = n:
//!   2^{-n+1} [(n - zeta) Gamma(n/2 - zeta)]|_{zeta=n} / Gamma(n/2)
//!     * q^n ln q.
//! The bracket is exact: (n - zeta) Gamma(n/2 - zeta) -> (-1)^{n/2}/(n/2)!,
//! i.e. -1 for n = 2 (residue of Gamma at -n/2 with the sign of the inner
//! substitution accounted for).
struct MsoValue {
  Rational exact_prefactor;  // 2^{-n+1} * (-1)^{n/2}/(n/2)! / Gamma(n/2)
  double value = 0.0;        // prefactor * q^n ln q
};

inline Rational mso_limit_bracket(int n) {
  if (n % 2 != 0 || n <= 0) throw std::invalid_argument("mso_limit_bracket: n must be even");
  // (n - zeta) Gamma(n/2 - zeta) at zeta = n: with u = zeta - n,
  // Gamma(-n/2 - u) = res_Gamma(n/2)/(-u) + O(1) and (n - zeta) = -u.
  return gamma_residue(n / 2);
}

inline MsoValue mso_symbol(int n, double q) {
  if (q <= 0.0) throw std::domain_error("mso_symbol: q must be positive");
  Rational twon1(1);
  for (int i = 0; i < n - 1; ++i) twon1 *= 2;
  Rational pre = mso_limit_bracket(n) / gamma_integer(n / 2) / twon1;
  MsoValue out;
  out.exact_prefactor = pre;
  out.value = static_cast<double>(pre) * std::pow(q, n) * std::log(q);
  return out;
}

//! Flat-model mode evaluation of the renormalized operator
//! c(n - zeta) Lambda^{n/2 - zeta} S(zeta) Lambda^{n/2 - zeta} with
//! Lambda = (1 + Delta_{h0})^{1/2}: value
//! c(n - zeta) (1 + q^2)^{n/2 - zeta} c(zeta) q^{2 zeta - n}.
inline SymbolValue s_tilde_factorization(int n, std::complex<double> zeta, double q) {
  SymbolValue s = scattering_symbol(n, zeta, q);
  if (s.pole) return s;
  std::complex<double> nu = zeta - 0.5 * n;
  if (near_gamma_pole(nu)) return {true, {}};
  std::complex<double> c_rev =
      std::pow(2.0, std::complex<double>(n) - 2.0 * (std::complex<double>(n) - zeta)) *
      gamma_complex(nu) / gamma_complex(-nu);
  return {false, c_rev * std::pow(1.0 + q * q, -nu) * s.value};
}

//! Exact check of 2 Res_{zeta=n} S = p_n on flat metrics: the residue from
//! Gamma-Laurent data versus the obstruction coefficient from the integer
//! recursion, per mode.
struct ResidueRelationReport {
  Rational q_squared;
  Rational twice_residue;
  GaussianRational p_n_mode;
  bool holds = false;
};

inline ResidueRelationReport residue_relation_check(const MetricExpansion& g,
                                                    const std::vector<int>& xi) {
  int n = g.n();
  if (!g.corrections().empty())
    throw std::invalid_argument("residue_relation_check: flat metric required");
  Rational q2 = g.h0().inverse().quadratic_form(xi);
  ResidueRelationReport rep;
  rep.q_squared = q2;
  rep.twice_residue = 2 * scattering_residue_at_n(n, q2);
  auto f = BoundaryFunction<GaussianRational>::mode(n, xi);
  EinsteinLogResult er = einstein_log_recursion(g, f, n + 1);
  rep.p_n_mode = er.p_n.coeff(xi);
  rep.holds = (GaussianRational(rep.twice_residue) == rep.p_n_mode);
  return rep;
}

}  // namespace phgscat

#endif
