#ifndef PHGSCAT_LINALG_HPP
#define PHGSCAT_LINALG_HPP

#include <stdexcept>
#include <vector>

#include "phgscat/rational.hpp"

namespace phgscat {

//! Small dense matrix of exact rationals (boundary metrics h0 and friends).
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(int n) : n_(n), a_(n * n, Rational(0)) {}
  static RationalMatrix identity(int n) {
    RationalMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int size() const { return n_; }
  Rational& operator()(int i, int j) { return a_[i * n_ + j]; }
  const Rational& operator()(int i, int j) const { return a_[i * n_ + j]; }

  bool is_symmetric() const {
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  friend RationalMatrix operator*(const RationalMatrix& x, const RationalMatrix& y) {
    RationalMatrix r(x.n_);
    for (int i = 0; i < x.n_; ++i)
      for (int k = 0; k < x.n_; ++k) {
        if (x(i, k) == 0) continue;
        for (int j = 0; j < x.n_; ++j) r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }
  friend bool operator==(const RationalMatrix& x, const RationalMatrix& y) {
    return x.n_ == y.n_ && x.a_ == y.a_;
  }

  Rational det() const {
    RationalMatrix m = *this;
    Rational d(1);
    for (int c = 0; c < n_; ++c) {
      int p = c;
      while (p < n_ && m(p, c) == 0) ++p;
      if (p == n_) return 0;
      if (p != c) {
        for (int j = 0; j < n_; ++j) std::swap(m(p, j), m(c, j));
        d = -d;
      }
      d *= m(c, c);
      for (int r = c + 1; r < n_; ++r) {
        Rational f = m(r, c) / m(c, c);
        for (int j = c; j < n_; ++j) m(r, j) -= f * m(c, j);
      }
    }
    return d;
  }

  RationalMatrix inverse() const {
    RationalMatrix m = *this;
    RationalMatrix inv = identity(n_);
    for (int c = 0; c < n_; ++c) {
      int p = c;
      while (p < n_ && m(p, c) == 0) ++p;
      if (p == n_) throw std::domain_error("RationalMatrix: singular matrix");
      if (p != c)
        for (int j = 0; j < n_; ++j) {
          std::swap(m(p, j), m(c, j));
          std::swap(inv(p, j), inv(c, j));
        }
      Rational piv = m(c, c);
      for (int j = 0; j < n_; ++j) {
        m(c, j) /= piv;
        inv(c, j) /= piv;
      }
      for (int r = 0; r < n_; ++r) {
        if (r == c || m(r, c) == 0) continue;
        Rational f = m(r, c);
        for (int j = 0; j < n_; ++j) {
          m(r, j) -= f * m(c, j);
          inv(r, j) -= f * inv(c, j);
        }
      }
    }
    return inv;
  }

  //! Sylvester criterion; exact.
  bool is_positive_definite() const {
    if (!is_symmetric()) return false;
    for (int k = 1; k <= n_; ++k) {
      RationalMatrix minor(k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) minor(i, j) = (*this)(i, j);
      if (minor.det() <= 0) return false;
    }
    return true;
  }

  //! xi . A . xi for an integer frequency vector.
  Rational quadratic_form(const std::vector<int>& xi) const {
    Rational q(0);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) q += (*this)(i, j) * xi[i] * xi[j];
    return q;
  }

 private:
  int n_ = 0;
  std::vector<Rational> a_;
};

}  // namespace phgscat

#endif
