#ifndef PHGSCAT_SERIES_HPP
#define PHGSCAT_SERIES_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "phgscat/boundary.hpp"

namespace phgscat {

//! The two indicial branches plus the smooth branch.  A series with base
//! Zeta or NMinusZeta carries the symbolic prefactor x^zeta or x^{n-zeta};
//! the tag is opaque and mixed-tag products are rejected.
enum class BaseTag { Zero, Zeta, NMinusZeta };

struct BaseExponent {
  BaseTag tag = BaseTag::Zero;
  int offset = 0;  // canonical form keeps this 0; shifts live in the term keys

  friend bool operator==(const BaseExponent& a, const BaseExponent& b) {
    return a.tag == b.tag && a.offset == b.offset;
  }
};

inline std::string base_tag_name(BaseTag t) {
  switch (t) {
    case BaseTag::Zero: return "1";
    case BaseTag::Zeta: return "x^zeta";
    case BaseTag::NMinusZeta: return "x^(n-zeta)";
  }
  return "?";
}

struct log_cap_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

//! Per-order bound on log powers: a term x^j (ln x)^l is admitted iff
//! l <= scale*j + shift.  The default (1,0) is the l <= k grading of
//! polyhomogeneous expansions; operations widen caps as their algebra
//! requires and anything beyond that is reported as unexpected log growth.
struct LogCap {
  int scale = 1;
  int shift = 0;
  // the shift is a safety ceiling, not a sharp bound; saturate instead of
  // overflowing when caps are combined repeatedly
  static constexpr int max_shift = 1 << 20;
  static int clamp_shift(long long s) {
    return s > max_shift ? max_shift : static_cast<int>(s);
  }
  int bound(int j) const { return scale * j + shift; }
  static LogCap combine_add(LogCap a, LogCap b) {
    return {std::max(a.scale, b.scale), std::max(a.shift, b.shift)};
  }
  static LogCap combine_mul(LogCap a, LogCap b) {
    return {std::max(a.scale, b.scale), clamp_shift(static_cast<long long>(a.shift) + b.shift)};
  }
};

//! Truncated polyhomogeneous series
//!     x^{base} * sum_{j<=J, l<=cap(j)} a_{j,l}(y) x^j (ln x)^l
//! with trigonometric-polynomial coefficients.  Immutable in spirit: all
//! operations return fresh values.
template <class S>
class PhgSeries {
 public:
  using Key = std::pair<int, int>;  // (j, l)
  using TermMap = std::map<Key, BoundaryFunction<S>>;

  PhgSeries() = default;
  PhgSeries(int dim, int truncation, BaseTag tag = BaseTag::Zero, LogCap cap = LogCap{})
      : dim_(dim), trunc_(truncation), base_{tag, 0}, cap_(cap) {}

  static PhgSeries constant(int dim, int truncation, S value) {
    PhgSeries s(dim, truncation);
    s.set_term(0, 0, BoundaryFunction<S>(dim, std::move(value)));
    return s;
  }
  static PhgSeries from_boundary(BoundaryFunction<S> f, int truncation,
                                 BaseTag tag = BaseTag::Zero, LogCap cap = LogCap{}) {
    PhgSeries s(f.dim(), truncation, tag, cap);
    s.set_term(0, 0, std::move(f));
    return s;
  }

  int dim() const { return dim_; }
  int truncation() const { return trunc_; }
  BaseExponent base() const { return base_; }
  BaseTag tag() const { return base_.tag; }
  LogCap cap() const { return cap_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void set_cap(LogCap c) { cap_ = c; }

  void set_term(int j, int l, BoundaryFunction<S> f) {
    if (j < 0 || l < 0) throw std::invalid_argument("PhgSeries: negative term index");
    if (j > trunc_) {
      if (!f.is_zero()) throw std::out_of_range("PhgSeries: term beyond truncation");
      return;
    }
    if (f.is_zero()) {
      terms_.erase({j, l});
      return;
    }
    if (l > cap_.bound(j))
      throw log_cap_error("PhgSeries: log power " + std::to_string(l) + " exceeds cap at x^" +
                          std::to_string(j));
    terms_[{j, l}] = std::move(f);
  }
  void add_term(int j, int l, const BoundaryFunction<S>& f) {
    if (f.is_zero() || j > trunc_) return;
    auto it = terms_.find({j, l});
    if (it == terms_.end()) set_term(j, l, f);
    else {
      it->second = it->second + f;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  //! Coefficient of x^{base+j} (ln x)^l; zero when absent.  Errors past the
  //! truncation order, where the series carries no information.
  BoundaryFunction<S> coefficient(int j, int l) const {
    if (j > trunc_) throw std::out_of_range("coefficient_extract: order beyond truncation");
    auto it = terms_.find({j, l});
    return it == terms_.end() ? BoundaryFunction<S>(dim_) : it->second;
  }

  int max_log_at(int j) const {
    int m = -1;
    for (const auto& [k, f] : terms_)
      if (k.first == j) m = std::max(m, k.second);
    return m;  // -1 when no term at order j
  }
  int min_order() const { return terms_.empty() ? trunc_ + 1 : terms_.begin()->first.first; }

  friend PhgSeries operator+(const PhgSeries& a, const PhgSeries& b) {
    if (!(a.base_ == b.base_))
      throw std::invalid_argument("series add: incompatible base tags");
    PhgSeries r(a.dim_, std::min(a.trunc_, b.trunc_), a.tag(), LogCap::combine_add(a.cap_, b.cap_));
    for (const auto& [k, f] : a.terms_)
      if (k.first <= r.trunc_) r.add_term(k.first, k.second, f);
    for (const auto& [k, f] : b.terms_)
      if (k.first <= r.trunc_) r.add_term(k.first, k.second, f);
    return r;
  }
  friend PhgSeries operator-(const PhgSeries& a, const PhgSeries& b) { return a + (-b); }
  PhgSeries operator-() const {
    PhgSeries r = *this;
    for (auto& [k, f] : r.terms_) f = -f;
    return r;
  }
  friend PhgSeries operator*(const S& s, const PhgSeries& a) {
    PhgSeries r(a.dim_, a.trunc_, a.tag(), a.cap_);
    for (const auto& [k, f] : a.terms_) r.add_term(k.first, k.second, s * f);
    return r;
  }
  PhgSeries scalar_div(const S& s) const {
    PhgSeries r(dim_, trunc_, tag(), cap_);
    for (const auto& [k, f] : terms_) r.add_term(k.first, k.second, f.scalar_div(s));
    return r;
  }

  //! Exact through order J; log powers add; at most one factor may carry a
  //! nonzero base tag.
  friend PhgSeries mul(const PhgSeries& a, const PhgSeries& b, int J) {
    if (a.tag() != BaseTag::Zero && b.tag() != BaseTag::Zero)
      throw std::invalid_argument("series mul: product of two tagged series is not defined");
    BaseTag tag = a.tag() != BaseTag::Zero ? a.tag() : b.tag();
    PhgSeries r(a.dim_, J, tag, LogCap::combine_mul(a.cap_, b.cap_));
    for (const auto& [ka, fa] : a.terms_) {
      if (ka.first > J) continue;
      for (const auto& [kb, fb] : b.terms_) {
        int j = ka.first + kb.first;
        if (j > J) continue;
        r.add_term(j, ka.second + kb.second, fa * fb);
      }
    }
    return r;
  }
  friend PhgSeries operator*(const PhgSeries& a, const PhgSeries& b) {
    return mul(a, b, std::min(a.trunc_, b.trunc_));
  }

  PhgSeries truncated(int J) const {
    PhgSeries r(dim_, J, tag(), cap_);
    for (const auto& [k, f] : terms_)
      if (k.first <= J) r.terms_[k] = f;
    return r;
  }

  //! Multiplication by x^k (k >= 0): shifts every term.
  PhgSeries x_shift(int k) const {
    if (k < 0) throw std::invalid_argument("x_shift: negative shift");
    PhgSeries r(dim_, trunc_, tag(), LogCap{cap_.scale, cap_.shift + 0});
    for (const auto& [key, f] : terms_)
      if (key.first + k <= trunc_) r.add_term(key.first + k, key.second, f);
    return r;
  }
  //! Multiplication by (ln x)^m.
  PhgSeries log_shift(int m) const {
    PhgSeries r(dim_, trunc_, tag(), LogCap{cap_.scale, cap_.shift + m});
    for (const auto& [key, f] : terms_) r.add_term(key.first, key.second + m, f);
    return r;
  }

  //! x d/dx, honoring the symbolic base exponent: the term
  //! x^{alpha+j}(ln x)^l a picks up (alpha+j) a at (j,l) and l a at (j,l-1).
  //! The boundary dimension doubles as n in alpha = zeta or n - zeta.
  PhgSeries x_dx() const {
    S alpha = base_value<S>(tag(), dim_);
    PhgSeries r(dim_, trunc_, tag(), LogCap{cap_.scale, cap_.shift + cap_.scale});
    for (const auto& [key, f] : terms_) {
      auto [j, l] = key;
      S e = alpha + ring<S>::from_rational(Rational(j));
      if (!ring<S>::is_zero(e)) r.add_term(j, l, e * f);
      if (l > 0) r.add_term(j, l - 1, ring<S>::from_rational(Rational(l)) * f);
    }
    return r;
  }

  //! d/dx on a Zero-based series; every term must have j >= 1 (or be
  //! log-free constant).  Result is one order shorter.
  PhgSeries d_dx() const {
    if (tag() != BaseTag::Zero) throw std::invalid_argument("d_dx: tagged series");
    PhgSeries r(dim_, trunc_ - 1, BaseTag::Zero, LogCap{cap_.scale, cap_.shift + 2 * cap_.scale});
    for (const auto& [key, f] : terms_) {
      auto [j, l] = key;
      if (j == 0) {
        if (l == 0) continue;  // constants die
        throw std::domain_error("d_dx: (ln x)^l term with no x power");
      }
      if (j - 1 > r.trunc_) continue;
      if (j != 0) r.add_term(j - 1, l, ring<S>::from_rational(Rational(j)) * f);
      if (l > 0) r.add_term(j - 1, l - 1, ring<S>::from_rational(Rational(l)) * f);
    }
    return r;
  }

  PhgSeries partial_y(int i) const {
    PhgSeries r(dim_, trunc_, tag(), cap_);
    for (const auto& [key, f] : terms_) r.add_term(key.first, key.second, f.partial(i));
    return r;
  }

  //! Retag: strip or attach the symbolic prefactor without touching terms.
  PhgSeries with_tag(BaseTag t) const {
    PhgSeries r = *this;
    r.base_ = BaseExponent{t, 0};
    return r;
  }

  friend bool operator==(const PhgSeries& a, const PhgSeries& b) {
    return a.base_ == b.base_ && a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const PhgSeries& a, const PhgSeries& b) { return !(a == b); }

  //! Canonical text rendering: terms sorted by (j,l), frequencies lexicographic.
  std::string to_string() const {
    std::string s;
    for (const auto& [k, f] : terms_) {
      if (!s.empty()) s += " + ";
      std::string factor;
      if (tag() != BaseTag::Zero) factor += base_tag_name(tag()) + "*";
      if (k.first > 0) factor += "x^" + std::to_string(k.first) + "*";
      if (k.second > 0) factor += "ln^" + std::to_string(k.second) + "*";
      s += factor + "{" + f.to_string() + "}";
    }
    if (s.empty()) s = "0";
    return s;
  }

  template <class T>
  static S base_value(BaseTag t, int n) {
    if (t == BaseTag::Zero) return ring<S>::zero();
    if constexpr (ring<S>::has_zeta) {
      if (t == BaseTag::Zeta) return ring<S>::zeta();
      return ring<S>::from_rational(Rational(n)) - ring<S>::zeta();
    } else {
      throw std::domain_error("symbolic base exponent needs the zeta-rational scalar ring");
    }
  }

 private:
  int dim_ = 0;
  int trunc_ = 0;
  BaseExponent base_{};
  LogCap cap_{};
  TermMap terms_;
};

//! Geometric-series inverse.  Requires base Zero and a constant invertible
//! scalar at order (0,0).
template <class S>
PhgSeries<S> series_invert(const PhgSeries<S>& a, int J) {
  if (a.tag() != BaseTag::Zero) throw std::invalid_argument("series_invert: tagged series");
  BoundaryFunction<S> c0 = a.coefficient(0, 0);
  if (!c0.is_constant() || c0.is_zero())
    throw std::domain_error("series_invert: constant term is not an invertible constant");
  if (a.max_log_at(0) > 0)
    throw std::domain_error("series_invert: log terms at order zero");
  S c = c0.coeff(std::vector<int>(a.dim(), 0));
  // a = c (1 + b), b = O(x)
  PhgSeries<S> b = a.scalar_div(c);
  b.set_term(0, 0, BoundaryFunction<S>(a.dim()));
  PhgSeries<S> acc = PhgSeries<S>::constant(a.dim(), J, ring<S>::one());
  acc.set_cap(LogCap{std::max(1, b.cap().scale), LogCap::clamp_shift(static_cast<long long>(b.cap().shift) * (J + 1))});
  PhgSeries<S> pw = acc;
  for (int k = 1; k <= J; ++k) {
    pw = mul(pw, -b, J);
    if (pw.is_zero()) break;
    acc = acc + pw;
  }
  return acc.scalar_div(c);
}

//! (1 + b)^p for rational p, via the binomial series.  Requires constant
//! term exactly 1.
template <class S>
PhgSeries<S> series_pow(const PhgSeries<S>& a, const Rational& p, int J) {
  if (a.tag() != BaseTag::Zero) throw std::invalid_argument("series_pow: tagged series");
  BoundaryFunction<S> c0 = a.coefficient(0, 0);
  if (c0 != BoundaryFunction<S>(a.dim(), ring<S>::one()) || a.max_log_at(0) > 0)
    throw std::domain_error("series_pow: constant term must be 1");
  PhgSeries<S> b = a;
  b.set_term(0, 0, BoundaryFunction<S>(a.dim()));
  PhgSeries<S> acc = PhgSeries<S>::constant(a.dim(), J, ring<S>::one());
  acc.set_cap(LogCap{std::max(1, b.cap().scale), LogCap::clamp_shift(static_cast<long long>(b.cap().shift) * (J + 1))});
  PhgSeries<S> pw = acc;
  Rational binom(1);
  for (int k = 1; k <= J; ++k) {
    binom *= (p - (k - 1)) / k;
    pw = mul(pw, b, J);
    if (pw.is_zero() || binom == 0) break;
    acc = acc + ring<S>::from_rational(binom) * pw;
  }
  return acc;
}

//! exp of a series with no order-(0,0) part.
template <class S>
PhgSeries<S> series_exp(const PhgSeries<S>& a, int J) {
  if (a.tag() != BaseTag::Zero) throw std::invalid_argument("series_exp: tagged series");
  if (!a.coefficient(0, 0).is_zero() || a.max_log_at(0) > 0)
    throw std::domain_error("series_exp: nonzero constant term");
  PhgSeries<S> acc = PhgSeries<S>::constant(a.dim(), J, ring<S>::one());
  acc.set_cap(LogCap{std::max(1, a.cap().scale), LogCap::clamp_shift(static_cast<long long>(a.cap().shift) * (J + 1))});
  PhgSeries<S> pw = acc;
  Rational fact(1);
  for (int k = 1; k <= J; ++k) {
    fact /= k;
    pw = mul(pw, a, J);
    if (pw.is_zero()) break;
    acc = acc + ring<S>::from_rational(fact) * pw;
  }
  return acc;
}

//! ln(1 + b) for a series with constant term exactly 1.
template <class S>
PhgSeries<S> series_log(const PhgSeries<S>& a, int J) {
  if (a.tag() != BaseTag::Zero) throw std::invalid_argument("series_log: tagged series");
  BoundaryFunction<S> c0 = a.coefficient(0, 0);
  if (c0 != BoundaryFunction<S>(a.dim(), ring<S>::one()) || a.max_log_at(0) > 0)
    throw std::domain_error("series_log: constant term must be 1");
  PhgSeries<S> b = a;
  b.set_term(0, 0, BoundaryFunction<S>(a.dim()));
  PhgSeries<S> acc(a.dim(), J, BaseTag::Zero,
                   LogCap{std::max(1, b.cap().scale), LogCap::clamp_shift(static_cast<long long>(b.cap().shift) * (J + 1))});
  PhgSeries<S> pw = PhgSeries<S>::constant(a.dim(), J, ring<S>::one());
  pw.set_cap(acc.cap());
  Rational sign(1);
  for (int k = 1; k <= J; ++k) {
    pw = mul(pw, b, J);
    if (pw.is_zero()) break;
    acc = acc + ring<S>::from_rational(sign / k) * pw;
    sign = -sign;
  }
  return acc;
}

}  // namespace phgscat

#endif
