#ifndef PHGSCAT_RING_HPP
#define PHGSCAT_RING_HPP

#include <complex>

#include "phgscat/rational.hpp"
#include "phgscat/zeta_rational.hpp"

namespace phgscat {

//! Scalar-ring glue for the templated boundary/series layer.  The ground
//! field is one of Rational, GaussianRational, ZetaRational.
template <class S>
struct ring;

template <>
struct ring<Rational> {
  static Rational zero() { return 0; }
  static Rational one() { return 1; }
  static bool is_zero(const Rational& v) { return v == 0; }
  static Rational from_rational(const Rational& r) { return r; }
  static constexpr bool has_imag = false;
  static constexpr bool has_zeta = false;
  static std::complex<double> to_complex(const Rational& v) { return {static_cast<double>(v), 0.0}; }
  static std::string to_string(const Rational& v) { return rat_to_string(v); }
};

template <>
struct ring<GaussianRational> {
  static GaussianRational zero() { return GaussianRational(0); }
  static GaussianRational one() { return GaussianRational(1); }
  static bool is_zero(const GaussianRational& v) { return v.is_zero(); }
  static GaussianRational from_rational(const Rational& r) { return GaussianRational(r); }
  static constexpr bool has_imag = true;
  static constexpr bool has_zeta = false;
  static GaussianRational imag_unit() { return GaussianRational::i(); }
  static GaussianRational conj(const GaussianRational& v) { return v.conj(); }
  static std::complex<double> to_complex(const GaussianRational& v) {
    return {static_cast<double>(v.re), static_cast<double>(v.im)};
  }
  static std::string to_string(const GaussianRational& v) { return v.to_string(); }
};

template <>
struct ring<ZetaRational> {
  static ZetaRational zero() { return ZetaRational(); }
  static ZetaRational one() { return ZetaRational(1); }
  static bool is_zero(const ZetaRational& v) { return v.is_zero(); }
  static ZetaRational from_rational(const Rational& r) { return ZetaRational(r); }
  static constexpr bool has_imag = true;
  static constexpr bool has_zeta = true;
  static ZetaRational imag_unit() { return ZetaRational(GaussianRational::i()); }
  static ZetaRational zeta() { return ZetaRational::zeta(); }
  static std::string to_string(const ZetaRational& v) { return v.to_string(); }
};

}  // namespace phgscat

#endif
