#ifndef PHGSCAT_METRIC_HPP
#define PHGSCAT_METRIC_HPP

#include <vector>

#include "phgscat/matrix_series.hpp"

namespace phgscat {

//! One polyhomogeneous correction to the boundary metric:
//! x^j (ln x)^l times a symmetric real tensor on the torus.
struct MetricCorrection {
  int j = 0;
  int l = 0;
  BoundaryTensor<GaussianRational> tensor;
};

//! Expansion data for g = x^{-2}(dx^2 + h(x)) on (0,eps) x T^n with
//!   h(x) = h0 + sum corrections, h0 constant symmetric positive definite.
class MetricExpansion {
 public:
  MetricExpansion() = default;
  MetricExpansion(int n, RationalMatrix h0, std::vector<MetricCorrection> corrections,
                  int truncation)
      : n_(n), h0_(std::move(h0)), corr_(std::move(corrections)), trunc_(truncation) {
    validate();
  }

  int n() const { return n_; }
  int truncation() const { return trunc_; }
  const RationalMatrix& h0() const { return h0_; }
  const std::vector<MetricCorrection>& corrections() const { return corr_; }

  int max_log_power() const {
    int m = 0;
    for (const auto& c : corr_) m = std::max(m, c.l);
    return m;
  }

  //! h(x) as a series matrix over the requested scalar ring, truncated at J.
  template <class S>
  SeriesMatrix<S> h_series(int J) const {
    LogCap cap = series_cap(J);
    SeriesMatrix<S> h(n_, J);
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k) {
        PhgSeries<S> e(n_, J, BaseTag::Zero, cap);
        if (i == k || h0_(i, k) != 0)
          e.set_term(0, 0, BoundaryFunction<S>(n_, ring<S>::from_rational(h0_(i, k))));
        h(i, k) = e;
      }
    for (const auto& c : corr_) {
      if (c.j > J) continue;
      for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k) {
          auto f = c.tensor(i, k).template map_coeffs<S>(
              [](const GaussianRational& g) { return embed<S>(g); });
          h(i, k).add_term(c.j, c.l, f);
        }
    }
    return h;
  }

  template <class S>
  SeriesMatrix<S> h_inverse_series(int J) const {
    return matrix_series_invert(h_series<S>(J), J);
  }

  //! Tr(h^{-1} dh/dx).  May carry log terms at order x^{k-1} when the
  //! lowest correction x^k comes with logs.
  template <class S>
  PhgSeries<S> trace_dxh(int J) const {
    SeriesMatrix<S> h = h_series<S>(J + 1);
    SeriesMatrix<S> hinv = h_inverse_series<S>(J);
    LogCap cap{1, (max_log_power() + 1) * (J + 2)};
    PhgSeries<S> t(n_, J, BaseTag::Zero, cap);
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k) {
        if (h(k, i).is_zero()) continue;
        PhgSeries<S> dh = h(k, i).d_dx();
        if (dh.is_zero()) continue;
        t = t + mul(hinv(i, k), dh.truncated(J), J);
      }
    return t;
  }

  //! s(x) = x Tr(h^{-1} dh/dx), the first-order trace that enters the
  //! radial part of the Laplacian.  Starts at order x^j for the lowest
  //! correction order j.
  template <class S>
  PhgSeries<S> s_series(int J) const {
    return trace_dxh<S>(J).x_shift(1);
  }

  //! ln(det h / det h0), needed for half-density weights.
  template <class S>
  PhgSeries<S> log_det_ratio(int J) const {
    return series_log_det(h_series<S>(J), h0_, J);
  }

  //! (det h / det h0)^p for rational p via exp(p ln(...)).
  template <class S>
  PhgSeries<S> det_ratio_pow(const Rational& p, int J) const {
    return series_exp(ring<S>::from_rational(p) * log_det_ratio<S>(J), J);
  }

  LogCap series_cap(int J) const {
    // corrections at x^j may carry (ln x)^l beyond l <= j; widen the cap
    int shift = 0;
    for (const auto& c : corr_) shift = std::max(shift, c.l);
    return LogCap{1, shift * (J + 2)};
  }

  template <class S>
  static S embed(const GaussianRational& g) {
    if constexpr (std::is_same_v<S, GaussianRational>) {
      return g;
    } else if constexpr (std::is_same_v<S, Rational>) {
      if (g.im != 0) throw std::domain_error("metric coefficient is complex");
      return g.re;
    } else {
      return S(g);
    }
  }

 private:
  void validate() const {
    if (h0_.size() != n_) throw std::invalid_argument("metric: h0 size mismatch");
    if (!h0_.is_positive_definite())
      throw std::invalid_argument("metric: h0 must be symmetric positive definite");
    for (const auto& c : corr_) {
      if (c.j < 1) throw std::invalid_argument("metric: corrections must vanish at x = 0");
      if (c.l < 0) throw std::invalid_argument("metric: negative log power");
      if (c.tensor.dim() != n_) throw std::invalid_argument("metric: tensor dimension mismatch");
      if (!c.tensor.is_symmetric()) throw std::invalid_argument("metric: correction not symmetric");
      if (!c.tensor.is_real()) throw std::invalid_argument("metric: correction violates reality");
    }
  }

  int n_ = 0;
  RationalMatrix h0_;
  std::vector<MetricCorrection> corr_;
  int trunc_ = 0;
};

}  // namespace phgscat

#endif
