#include <catch2/catch_amalgamated.hpp>

#include "phgscat/mode.hpp"

using namespace phgscat;

namespace {

MetricExpansion flat(int n, int J = 8) {
  RationalMatrix h0(n);
  for (int i = 0; i < n; ++i) h0(i, i) = Rational(1);
  return MetricExpansion(n, h0, {}, J);
}

constexpr double pi = 3.14159265358979323846;

}  // namespace

TEST_CASE("adaptive integrator on closed-form flows") {
  SECTION("exponential growth") {
    auto f = [](double, const CVec2& y) -> CVec2 { return {y[0], y[1]}; };
    auto path = integrate_rk45(f, 0.0, 1.0, {1.0, 1.0}, 1e-12);
    CHECK(std::abs(path.back().y[0] - std::exp(1.0)) < 1e-10);
  }
  SECTION("rotation preserves the modulus") {
    std::complex<double> i(0.0, 1.0);
    auto f = [i](double, const CVec2& y) -> CVec2 { return {i * y[0], i * y[1]}; };
    auto path = integrate_rk45(f, 0.0, 20.0, {1.0, 1.0}, 1e-11);
    CHECK(std::abs(std::abs(path.back().y[0]) - 1.0) < 1e-9);
    CHECK(std::abs(path.back().y[0] - std::exp(i * 20.0)) < 1e-8);
  }
  SECTION("tightening the tolerance tightens the answer") {
    auto f = [](double, const CVec2& y) -> CVec2 { return {y[1], -y[0]}; };
    double e6 = 0, e11 = 0;
    for (auto [tol, err] : {std::pair<double, double*>{1e-6, &e6}, {1e-11, &e11}}) {
      auto path = integrate_rk45(f, 0.0, 10.0, {1.0, 0.0}, tol);
      *err = std::abs(path.back().y[0] - std::cos(10.0));
    }
    CHECK(e11 < e6);
    CHECK(e11 < 1e-8);
  }
  SECTION("backward integration") {
    auto f = [](double, const CVec2& y) -> CVec2 { return {y[0], y[1]}; };
    auto path = integrate_rk45(f, 0.0, -2.0, {1.0, 1.0}, 1e-12);
    CHECK(std::abs(path.back().y[0] - std::exp(-2.0)) < 1e-11);
  }
}

TEST_CASE("modified bessel function against closed forms") {
  SECTION("half-integer order closed form") {
    // K_{1/2}(z) = sqrt(pi/(2z)) e^{-z}, exact for both evaluation regimes
    for (double z : {0.5, 3.0, 12.0, 30.0}) {
      std::complex<double> k = bessel_K({0.5, 0.0}, z);
      double exact = std::sqrt(pi / (2.0 * z)) * std::exp(-z);
      CHECK(std::abs(k - exact) / exact < 1e-10);
    }
  }
  SECTION("series and asymptotics overlap") {
    for (double z : {7.0, 9.0}) {
      std::complex<double> nu(0.7, 0.3);
      std::complex<double> a = bessel_K_series(nu, z);
      std::complex<double> b = bessel_K_asymptotic(nu, z);
      CHECK(std::abs(a - b) / std::abs(a) < 1e-6);
    }
  }
  SECTION("derivative against a central difference") {
    std::complex<double> nu(0.6, 0.0);
    double z = 8.0, h = 1e-5;
    std::complex<double> fd = (bessel_K(nu, z + h) - bessel_K(nu, z - h)) / (2.0 * h);
    CHECK(std::abs(bessel_K_prime(nu, z) - fd) / std::abs(fd) < 1e-7);
  }
}

TEST_CASE("radial profile and potential-free integration") {
  MetricExpansion g = flat(2);
  SECTION("y-dependent metrics are rejected") {
    RationalMatrix h0(2);
    h0(0, 0) = Rational(1);
    h0(1, 1) = Rational(1);
    BoundaryTensor<GaussianRational> t(2);
    BoundaryFunction<GaussianRational> f(2);
    f.add_term({1, 0}, GaussianRational(1));
    f.add_term({-1, 0}, GaussianRational(1));
    t.set(0, 0, f);
    MetricExpansion gy(2, h0, {{2, 0, t}}, 8);
    CHECK_THROWS_AS(make_radial_profile(gy, {1, 0}, 4), std::domain_error);
  }
  SECTION("indicial solutions at q = 0") {
    // keep the two indicial exponents close: integrating backward amplifies
    // contamination of the steeper branch by exp(gap * |t|)
    RadialProfile prof = make_radial_profile(g, {0, 0}, 8);
    std::complex<double> zeta(1.3, 0.0);
    auto f = mode_rhs(prof, zeta);
    auto sol = solve_mode_ode(f, 0.0, {1.0, zeta}, {std::log(1e-4)}, 1e-13);
    std::complex<double> exact = std::pow(1e-4, zeta);
    CHECK(std::abs(sol[0].y[0] - exact) / std::abs(exact) < 1e-10);
  }
}

TEST_CASE("connection coefficients from synthetic data") {
  int n = 1;
  std::complex<double> zeta(0.8, 0.0);
  auto phi = [&](double x) { return std::pow(x, 1.0 - zeta.real()); };
  auto psi = [&](double x) { return std::pow(x, zeta.real()); };
  std::vector<double> xs;
  std::vector<std::complex<double>> us;
  for (int i = 0; i < 8; ++i) {
    double x = 1e-4 * std::pow(10.0, i / 4.0);
    xs.push_back(x);
    us.push_back(2.0 * phi(x) + std::complex<double>(0.0, 3.0) * psi(x));
  }
  ConnectionPair cp = extract_connection(
      xs, us, [&](double x) { return std::complex<double>(phi(x)); },
      [&](double x) { return std::complex<double>(psi(x)); });
  CHECK(std::abs(cp.a - 2.0) < 1e-10);
  CHECK(std::abs(cp.b - std::complex<double>(0.0, 3.0)) < 1e-10);
  CHECK(cp.residual < 1e-12);
  (void)n;
}

TEST_CASE("numeric connection value against the exact multiplier") {
  MetricExpansion g = flat(1);
  ModeProblem p{g, {1}, {0.8, 0.0}};
  NumericScattering ns = numeric_scattering(p);
  SymbolValue sv = scattering_symbol(1, p.zeta, ns.q);
  CHECK(std::abs(ns.value - sv.value) / std::abs(sv.value) < 1e-6);
  CHECK(ns.fit.residual < 1e-8);

  SECTION("window stability") {
    ModeProblem p2 = p;
    p2.x_min = 3e-4;
    NumericScattering ns2 = numeric_scattering(p2);
    CHECK(std::abs(ns2.value - ns.value) / std::abs(ns.value) < 1e-6);
  }
  SECTION("reflected parameter gives the reciprocal") {
    ModeProblem pr = p;
    pr.zeta = std::complex<double>(1.0) - p.zeta;  // n - zeta
    NumericScattering nsr = numeric_scattering(pr);
    CHECK(std::abs(ns.value * nsr.value - 1.0) < 1e-6);
  }
}

TEST_CASE("wronskian weight is conserved") {
  MetricExpansion g = flat(2);
  RadialProfile prof = make_radial_profile(g, {0, 0}, 8);
  std::complex<double> zeta(1.3, 0.4);
  auto f = mode_rhs(prof, zeta);
  CVec2 y1{1.0, zeta};
  CVec2 y2{1.0, std::complex<double>(2.0) - zeta};
  double t1 = std::log(1e-3);
  auto s1 = solve_mode_ode(f, 0.0, y1, {t1}, 1e-12);
  auto s2 = solve_mode_ode(f, 0.0, y2, {t1}, 1e-12);
  std::complex<double> w0 = weighted_wronskian(2, 0.0, y1, y2);
  std::complex<double> w1 = weighted_wronskian(2, t1, s1[0].y, s2[0].y);
  CHECK(std::abs(w1 - w0) / std::abs(w0) < 1e-8);
}

TEST_CASE("pole probe recovers the fitted order") {
  std::complex<double> zeta0(2.0, 0.0);
  std::vector<std::complex<double>> zs, vs;
  for (int i = 0; i < 12; ++i) {
    std::complex<double> z = zeta0 + std::complex<double>(0.05 + 0.01 * i, 0.02);
    zs.push_back(z);
    vs.push_back(3.0 / ((z - zeta0) * (z - zeta0)) + 0.7);
  }
  PoleProbe pp = pole_probe(zs, vs, zeta0);
  CHECK(pp.order == 2);
  CHECK(std::abs(pp.strength - 3.0) < 1e-8);
  CHECK(pp.misfit < 1e-10);
}
