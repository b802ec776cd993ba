#ifndef PHGSCAT_BESSEL_HPP
#define PHGSCAT_BESSEL_HPP

#include "phgscat/gamma.hpp"

namespace phgscat {

//! Modified Bessel I_nu(z) by the ascending series; complex order, real
//! argument.  Intended for z < ~10 (the matched asymptotic regime takes
//! over beyond that).
inline std::complex<double> bessel_I_series(std::complex<double> nu, double z) {
  std::complex<double> half = 0.5 * z;
  std::complex<double> term = std::pow(half, nu) / gamma_complex(nu + 1.0);
  std::complex<double> sum = term;
  double z2 = 0.25 * z * z;
  for (int m = 1; m < 400; ++m) {
    term *= z2 / (static_cast<double>(m) * (nu + static_cast<double>(m)));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

//! K_nu by the reflection combination; requires nu off the integers.
inline std::complex<double> bessel_K_series(std::complex<double> nu, double z) {
  const double pi = 3.14159265358979323846;
  std::complex<double> s = std::sin(pi * nu);
  if (std::abs(s) < 1e-8)
    throw std::domain_error("bessel_K_series: order too close to an integer");
  return 0.5 * pi * (bessel_I_series(-nu, z) - bessel_I_series(nu, z)) / s;
}

//! Large-argument asymptotics
//!   K_nu(z) ~ sqrt(pi/(2z)) e^{-z} sum_k a_k(nu) / z^k,
//!   a_k = prod_{j=1..k} (4 nu^2 - (2j-1)^2) / (k! 8^k),
//! summed to the smallest term.
inline std::complex<double> bessel_K_asymptotic(std::complex<double> nu, double z) {
  const double pi = 3.14159265358979323846;
  std::complex<double> nu2 = 4.0 * nu * nu;
  std::complex<double> term = 1.0, sum = 1.0;
  double last = 1.0;
  for (int k = 1; k < 60; ++k) {
    double odd = 2.0 * k - 1.0;
    term *= (nu2 - odd * odd) / (8.0 * k * z);
    if (std::abs(term) > last) break;  // divergent tail reached
    sum += term;
    last = std::abs(term);
    if (last < 1e-17 * std::abs(sum)) break;
  }
  return std::sqrt(pi / (2.0 * z)) * std::exp(-z) * sum;
}

//! Unified evaluation with the documented switchover; series below 2,
//! asymptotics above 10, either in between (they agree there).
inline std::complex<double> bessel_K(std::complex<double> nu, double z) {
  if (z <= 0.0) throw std::domain_error("bessel_K: argument must be positive");
  if (z < 6.0) return bessel_K_series(nu, z);
  return bessel_K_asymptotic(nu, z);
}

//! d/dz K_nu(z) = -(K_{nu-1}(z) + K_{nu+1}(z)) / 2.
inline std::complex<double> bessel_K_prime(std::complex<double> nu, double z) {
  return -0.5 * (bessel_K(nu - 1.0, z) + bessel_K(nu + 1.0, z));
}

}  // namespace phgscat

#endif
