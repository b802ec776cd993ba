#ifndef PHGSCAT_ODE_HPP
#define PHGSCAT_ODE_HPP

#include <array>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace phgscat {

using CVec2 = std::array<std::complex<double>, 2>;

struct OdeSample {
  double t;
  CVec2 y;
};

//! Adaptive Dormand-Prince 5(4) for a complex 2-dimensional system
//! y' = f(t, y), integrated from t0 to t1 (either direction).  Records the
//! accepted steps; deterministic for fixed inputs.
inline std::vector<OdeSample> integrate_rk45(
    const std::function<CVec2(double, const CVec2&)>& f, double t0, double t1, CVec2 y0,
    double tol) {
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                      a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                      b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  auto axpy = [](CVec2 y, std::initializer_list<std::pair<double, const CVec2*>> terms,
                 double h) {
    for (auto& [c, k] : terms) {
      y[0] += h * c * (*k)[0];
      y[1] += h * c * (*k)[1];
    }
    return y;
  };

  double dir = (t1 >= t0) ? 1.0 : -1.0;
  double h = dir * std::min(0.1, std::abs(t1 - t0) / 10.0);
  double t = t0;
  CVec2 y = y0;
  std::vector<OdeSample> out{{t, y}};
  int guard = 0;
  while (dir * (t1 - t) > 1e-14) {
    if (++guard > 2000000) throw std::runtime_error("integrate_rk45: step budget exhausted");
    if (dir * (t + h - t1) > 0) h = t1 - t;
    CVec2 k1 = f(t, y);
    CVec2 k2 = f(t + c2 * h, axpy(y, {{a21, &k1}}, h));
    CVec2 k3 = f(t + c3 * h, axpy(y, {{a31, &k1}, {a32, &k2}}, h));
    CVec2 k4 = f(t + c4 * h, axpy(y, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, h));
    CVec2 k5 = f(t + c5 * h, axpy(y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, h));
    CVec2 k6 = f(t + h, axpy(y, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, h));
    CVec2 y5 = axpy(y, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, h);
    CVec2 k7 = f(t + h, y5);
    double err = 0.0, scale = 0.0;
    for (int i = 0; i < 2; ++i) {
      std::complex<double> e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                    e6 * k6[i] + e7 * k7[i]);
      err = std::max(err, std::abs(e));
      scale = std::max({scale, std::abs(y[i]), std::abs(y5[i])});
    }
    // relative control: the mode solutions sweep many orders of magnitude
    double target = tol * std::max(scale, 1e-300);
    if (err <= target || std::abs(h) < 1e-13) {
      t += h;
      y = y5;
      out.push_back({t, y});
      if (!std::isfinite(y[0].real()) || !std::isfinite(y[1].real()))
        throw std::runtime_error("integrate_rk45: non-finite state");
    }
    double factor = (err > 0.0) ? 0.9 * std::pow(target / err, 0.2) : 5.0;
    factor = std::min(5.0, std::max(0.2, factor));
    h *= factor;
    if (std::abs(h) < 1e-14) throw std::runtime_error("integrate_rk45: step underflow");
  }
  return out;
}

}  // namespace phgscat

#endif
