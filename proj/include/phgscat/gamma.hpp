#ifndef PHGSCAT_GAMMA_HPP
#define PHGSCAT_GAMMA_HPP

#include <cmath>
#include <complex>
#include <stdexcept>

#include "phgscat/rational.hpp"

namespace phgscat {

//! Residue of Gamma at z = -k: (-1)^k / k!, exact.
inline Rational gamma_residue(int k) {
  if (k < 0) throw std::invalid_argument("gamma_residue: negative pole index");
  Rational f(1);
  for (int i = 2; i <= k; ++i) f *= i;
  Rational r = 1 / f;
  return (k % 2 == 0) ? r : -r;
}

//! Gamma at a positive integer, exact factorial.
inline Rational gamma_integer(int m) {
  if (m <= 0) throw std::invalid_argument("gamma_integer: needs positive integer");
  Rational f(1);
  for (int i = 2; i < m; ++i) f *= i;
  return f;
}

//! Lanczos approximation (g = 7, 9 coefficients); relative error around
//! 1e-13 on the right half plane, extended by reflection.
inline std::complex<double> gamma_complex(std::complex<double> z) {
  static const double g = 7.0;
  static const double c[9] = {0.99999999999980993,  676.5203681218851,    -1259.1392167224028,
                              771.32342877765313,   -176.61502916214059,  12.507343278686905,
                              -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.real() < 0.5) {
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    const double pi = 3.14159265358979323846;
    std::complex<double> s = std::sin(pi * z);
    if (std::abs(s) == 0.0) return {std::numeric_limits<double>::infinity(), 0.0};
    return pi / (s * gamma_complex(1.0 - z));
  }
  z -= 1.0;
  std::complex<double> a = c[0];
  std::complex<double> t = z + g + 0.5;
  for (int i = 1; i < 9; ++i) a += c[i] / (z + static_cast<double>(i));
  const double sqrt2pi = 2.5066282746310002;
  return sqrt2pi * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

//! True when z sits (to within tol) on a Gamma pole 0, -1, -2, ...
inline bool near_gamma_pole(std::complex<double> z, double tol = 1e-9) {
  if (std::abs(z.imag()) > tol) return false;
  double r = z.real();
  if (r > tol) return false;
  return std::abs(r - std::round(r)) <= tol;
}

}  // namespace phgscat

#endif
