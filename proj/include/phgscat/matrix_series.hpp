#ifndef PHGSCAT_MATRIX_SERIES_HPP
#define PHGSCAT_MATRIX_SERIES_HPP

#include <vector>

#include "phgscat/series.hpp"

namespace phgscat {

//! Square matrix with polyhomogeneous-series entries (the boundary metric
//! h(x) and its inverse).  All entries share dim, base Zero, truncation.
template <class S>
class SeriesMatrix {
 public:
  SeriesMatrix() = default;
  SeriesMatrix(int n, int truncation)
      : n_(n), trunc_(truncation), e_(n * n, PhgSeries<S>(n, truncation)) {}

  static SeriesMatrix identity(int n, int truncation) {
    SeriesMatrix m(n, truncation);
    for (int i = 0; i < n; ++i)
      m(i, i) = PhgSeries<S>::constant(n, truncation, ring<S>::one());
    return m;
  }
  static SeriesMatrix from_constant(const RationalMatrix& a, int truncation) {
    SeriesMatrix m(a.size(), truncation);
    for (int i = 0; i < a.size(); ++i)
      for (int j = 0; j < a.size(); ++j)
        if (a(i, j) != 0)
          m(i, j) = PhgSeries<S>::constant(a.size(), truncation, ring<S>::from_rational(a(i, j)));
    return m;
  }

  int size() const { return n_; }
  int truncation() const { return trunc_; }
  PhgSeries<S>& operator()(int i, int j) { return e_[i * n_ + j]; }
  const PhgSeries<S>& operator()(int i, int j) const { return e_[i * n_ + j]; }

  friend SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b) {
    SeriesMatrix r(a.n_, std::min(a.trunc_, b.trunc_));
    for (int i = 0; i < a.n_ * a.n_; ++i) r.e_[i] = a.e_[i] + b.e_[i];
    return r;
  }
  friend SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b) {
    SeriesMatrix r(a.n_, std::min(a.trunc_, b.trunc_));
    for (int i = 0; i < a.n_ * a.n_; ++i) r.e_[i] = a.e_[i] - b.e_[i];
    return r;
  }
  friend SeriesMatrix mul(const SeriesMatrix& a, const SeriesMatrix& b, int J) {
    SeriesMatrix r(a.n_, J);
    for (int i = 0; i < a.n_; ++i)
      for (int j = 0; j < a.n_; ++j) {
        PhgSeries<S> acc(a.n_, J);
        for (int k = 0; k < a.n_; ++k) {
          if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
          acc = acc + mul(a(i, k), b(k, j), J);  // ADL: series product
        }
        r(i, j) = acc;
      }
    return r;
  }

  bool is_zero() const {
    for (const auto& s : e_)
      if (!s.is_zero()) return false;
    return true;
  }
  friend bool operator==(const SeriesMatrix& a, const SeriesMatrix& b) {
    return a.n_ == b.n_ && a.e_ == b.e_;
  }

  //! Matrix of the (j,l) coefficients.
  BoundaryTensor<S> coefficient(int j, int l) const {
    BoundaryTensor<S> t(n_);
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k) t.set(i, k, (*this)(i, k).coefficient(j, l));
    return t;
  }

  PhgSeries<S> trace() const {
    PhgSeries<S> t(n_, trunc_);
    for (int i = 0; i < n_; ++i) t = t + (*this)(i, i);
    return t;
  }

 private:
  int n_ = 0;
  int trunc_ = 0;
  std::vector<PhgSeries<S>> e_;
};

//! Inverse of H = H0 (I + B) with H0 the constant leading matrix and
//! B = O(x): Neumann series (I + B)^{-1} H0^{-1}, exact through J.
template <class S>
SeriesMatrix<S> matrix_series_invert(const SeriesMatrix<S>& h, int J) {
  int n = h.size();
  RationalMatrix h0(n);
  BoundaryTensor<S> lead = h.coefficient(0, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const S& c = lead(i, j).coeff(std::vector<int>(n, 0));
      if (!lead(i, j).is_constant())
        throw std::domain_error("matrix_series_invert: leading matrix is not constant");
      if constexpr (std::is_same_v<S, GaussianRational>) {
        if (c.im != 0) throw std::domain_error("matrix_series_invert: complex leading matrix");
        h0(i, j) = c.re;
      } else if constexpr (std::is_same_v<S, Rational>) {
        h0(i, j) = c;
      } else {
        if (!c.is_constant()) throw std::domain_error("matrix_series_invert: leading matrix depends on zeta");
        GaussianRational g = c.constant_value();
        if (g.im != 0) throw std::domain_error("matrix_series_invert: complex leading matrix");
        h0(i, j) = g.re;
      }
    }
  for (int jj = 0; jj <= J; ++jj)
    if (h.coefficient(0, 0).is_zero() && jj == 0) break;
  if (h.coefficient(0, 0).is_zero())
    throw std::domain_error("matrix_series_invert: singular leading matrix");

  SeriesMatrix<S> h0inv_s = SeriesMatrix<S>::from_constant(h0.inverse(), J);
  // B = H0^{-1} H - I, all entries O(x)
  SeriesMatrix<S> b = mul(h0inv_s, h, J) - SeriesMatrix<S>::identity(n, J);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (b(i, j).min_order() == 0)
        throw std::domain_error("matrix_series_invert: correction terms start at order zero");
  SeriesMatrix<S> acc = SeriesMatrix<S>::identity(n, J);
  SeriesMatrix<S> pw = acc;
  for (int k = 1; k <= J; ++k) {
    pw = mul(pw, b, J);
    if (pw.is_zero()) break;
    SeriesMatrix<S> signed_pw = pw;
    if (k % 2 == 1) signed_pw = SeriesMatrix<S>(n, J) - pw;
    acc = acc + signed_pw;
  }
  return mul(acc, h0inv_s, J);
}

//! ln det(H) - ln det(H0) = Tr ln(I + B) for H = H0 (I + B), B = O(x).
template <class S>
PhgSeries<S> series_log_det(const SeriesMatrix<S>& h, const RationalMatrix& h0, int J) {
  int n = h.size();
  SeriesMatrix<S> h0inv_s = SeriesMatrix<S>::from_constant(h0.inverse(), J);
  SeriesMatrix<S> b = mul(h0inv_s, h, J) - SeriesMatrix<S>::identity(n, J);
  PhgSeries<S> acc(n, J);
  SeriesMatrix<S> pw = SeriesMatrix<S>::identity(n, J);
  Rational sign(1);
  for (int k = 1; k <= J; ++k) {
    pw = mul(pw, b, J);
    if (pw.is_zero()) break;
    acc = acc + ring<S>::from_rational(sign / k) * pw.trace();
    sign = -sign;
  }
  return acc;
}

}  // namespace phgscat

#endif
