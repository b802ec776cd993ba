#include <catch2/catch_amalgamated.hpp>

#include "phgscat/symbol.hpp"

using namespace phgscat;

namespace {

MetricExpansion flat(int n, int J = 8) {
  RationalMatrix h0(n);
  for (int i = 0; i < n; ++i) h0(i, i) = Rational(1);
  return MetricExpansion(n, h0, {}, J);
}

constexpr double pi = 3.14159265358979323846;

}  // namespace

TEST_CASE("gamma function identities") {
  SECTION("half-integer values") {
    CHECK(std::abs(gamma_complex({0.5, 0.0}) - std::sqrt(pi)) < 1e-13);
    CHECK(std::abs(gamma_complex({2.5, 0.0}) - 0.75 * std::sqrt(pi)) < 1e-12);
  }
  SECTION("recurrence Gamma(z+1) = z Gamma(z)") {
    for (std::complex<double> z : {std::complex<double>(0.3, 0.7),
                                   std::complex<double>(-1.4, 0.2),
                                   std::complex<double>(2.2, -1.1)}) {
      std::complex<double> lhs = gamma_complex(z + 1.0);
      std::complex<double> rhs = z * gamma_complex(z);
      CHECK(std::abs(lhs - rhs) / std::abs(lhs) < 1e-12);
    }
  }
  SECTION("reflection Gamma(z) Gamma(1-z) = pi / sin(pi z)") {
    std::complex<double> z(0.3, 0.4);
    std::complex<double> lhs = gamma_complex(z) * gamma_complex(1.0 - z);
    std::complex<double> rhs = pi / std::sin(pi * z);
    CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-12);
  }
  SECTION("residues at nonpositive integers") {
    CHECK(gamma_residue(0) == Rational(1));
    CHECK(gamma_residue(1) == Rational(-1));
    CHECK(gamma_residue(3) == Rational(-1, 6));
    // numeric oracle: (z + k) Gamma(z) near z = -k
    std::complex<double> z(-3.0 + 1e-7, 0.0);
    std::complex<double> approx = (z + 3.0) * gamma_complex(z);
    CHECK(std::abs(approx - static_cast<double>(gamma_residue(3))) < 1e-5);
  }
}

TEST_CASE("scattering multiplier values") {
  SECTION("frozen examples") {
    CHECK(std::abs(scattering_symbol(1, {1.0, 0.0}, 1.0).value - (-1.0)) < 1e-12);
    CHECK(std::abs(scattering_symbol(2, {1.5, 0.0}, 2.0).value - (-2.0)) < 1e-12);
  }
  SECTION("functional equation c(zeta) c(n - zeta) = 1") {
    for (int n : {1, 2, 3}) {
      std::complex<double> zeta(0.37 * n + 0.4, 0.21);
      std::complex<double> a = scattering_symbol(n, zeta, 1.0).value;
      std::complex<double> b = scattering_symbol(n, std::complex<double>(n) - zeta, 1.0).value;
      CHECK(std::abs(a * b - 1.0) < 1e-11);
    }
  }
  SECTION("pole marker at the Gamma poles") {
    CHECK(scattering_symbol(2, {2.0, 0.0}, 1.0).pole);
  }
}

TEST_CASE("exact residue of the symbol at the integer point") {
  // n = 2: Res = q^2 / 4
  CHECK(scattering_residue_at_n(2, Rational(1)) == Rational(1, 4));
  CHECK(scattering_residue_at_n(2, Rational(5)) == Rational(5, 4));
  // n = 4: (-1)^{3} 2^{-4} q^4 / (2! 1!) = -q^4/32
  CHECK(scattering_residue_at_n(4, Rational(1)) == Rational(-1, 32));

  SECTION("numeric oracle: (zeta - n) c(zeta) q^{2 zeta - n} near zeta = n") {
    double q = 1.3;
    std::complex<double> zeta(2.0 + 1e-7, 0.0);
    std::complex<double> approx = (zeta - 2.0) * scattering_symbol(2, zeta, q).value;
    double exact = static_cast<double>(scattering_residue_at_n(2, Rational(13, 10) * Rational(13, 10)));
    CHECK(std::abs(approx - exact) < 1e-5);
  }
}

TEST_CASE("limit bracket of the modified operator at the pole") {
  // numeric oracle: (n - zeta) Gamma(n/2 - zeta) -> (-1)^{n/2}/(n/2)! at zeta = n
  for (int n : {2, 4}) {
    std::complex<double> zeta(n + 1e-7, 0.0);
    std::complex<double> approx =
        (std::complex<double>(n) - zeta) * gamma_complex(0.5 * n - zeta);
    CHECK(std::abs(approx - static_cast<double>(mso_limit_bracket(n))) < 1e-5);
  }
  CHECK(mso_limit_bracket(2) == Rational(-1));
  CHECK(mso_limit_bracket(4) == Rational(1, 2));

  SECTION("assembled value") {
    MsoValue v = mso_symbol(2, 2.0);
    CHECK(v.exact_prefactor == Rational(-1, 2));
    CHECK(std::abs(v.value - (-0.5 * 4.0 * std::log(2.0))) < 1e-13);
  }
}

TEST_CASE("renormalized factorization is near one at matched weight") {
  SymbolValue s = s_tilde_factorization(1, {0.75, 0.0}, 10.0);
  REQUIRE_FALSE(s.pole);
  CHECK(std::abs(s.value - 1.0) < 0.02);
}

TEST_CASE("twice the residue equals the obstruction coefficient") {
  MetricExpansion g = flat(2);
  for (std::vector<int> xi : {std::vector<int>{1, 0}, {1, 1}, {2, 1}}) {
    ResidueRelationReport rep = residue_relation_check(g, xi);
    CHECK(rep.holds);
    CHECK(GaussianRational(rep.twice_residue) == rep.p_n_mode);
  }
}
