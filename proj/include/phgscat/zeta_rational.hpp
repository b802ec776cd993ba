#ifndef PHGSCAT_ZETA_RATIONAL_HPP
#define PHGSCAT_ZETA_RATIONAL_HPP

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "phgscat/rational.hpp"

namespace phgscat {

//! Dense polynomial in the spectral parameter zeta with Gaussian rational
//! coefficients.  coeffs[k] multiplies zeta^k; trailing zeros are stripped,
//! so the zero polynomial has an empty coefficient vector.
struct ZetaPoly {
  std::vector<GaussianRational> coeffs;

  ZetaPoly() = default;
  explicit ZetaPoly(GaussianRational c) {
    if (!c.is_zero()) coeffs.push_back(std::move(c));
  }
  explicit ZetaPoly(std::vector<GaussianRational> cs) : coeffs(std::move(cs)) { normalize(); }

  static ZetaPoly zeta() { return ZetaPoly(std::vector<GaussianRational>{0, 1}); }
  static ZetaPoly constant(GaussianRational c) { return ZetaPoly(std::move(c)); }

  void normalize() {
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  }
  bool is_zero() const { return coeffs.empty(); }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }  // -1 for zero
  const GaussianRational& leading() const { return coeffs.back(); }

  GaussianRational coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs.size())) return GaussianRational(0);
    return coeffs[k];
  }

  friend ZetaPoly operator+(const ZetaPoly& a, const ZetaPoly& b) {
    ZetaPoly r;
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()));
    for (size_t k = 0; k < r.coeffs.size(); ++k) r.coeffs[k] = a.coeff((int)k) + b.coeff((int)k);
    r.normalize();
    return r;
  }
  friend ZetaPoly operator-(const ZetaPoly& a, const ZetaPoly& b) {
    ZetaPoly r;
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()));
    for (size_t k = 0; k < r.coeffs.size(); ++k) r.coeffs[k] = a.coeff((int)k) - b.coeff((int)k);
    r.normalize();
    return r;
  }
  ZetaPoly operator-() const {
    ZetaPoly r = *this;
    for (auto& c : r.coeffs) c = -c;
    return r;
  }
  friend ZetaPoly operator*(const ZetaPoly& a, const ZetaPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    ZetaPoly r;
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, GaussianRational(0));
    for (size_t i = 0; i < a.coeffs.size(); ++i)
      for (size_t j = 0; j < b.coeffs.size(); ++j) r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    r.normalize();
    return r;
  }

  //! Polynomial division: returns (quotient, remainder), deg r < deg b.
  static std::pair<ZetaPoly, ZetaPoly> divmod(const ZetaPoly& a, const ZetaPoly& b) {
    if (b.is_zero()) throw std::domain_error("ZetaPoly division by zero polynomial");
    ZetaPoly q, r = a;
    if (r.degree() < b.degree()) return {q, r};
    q.coeffs.assign(r.degree() - b.degree() + 1, GaussianRational(0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
      int d = r.degree() - b.degree();
      GaussianRational c = r.leading() / b.leading();
      q.coeffs[d] = c;
      for (int k = 0; k <= b.degree(); ++k) r.coeffs[k + d] -= c * b.coeffs[k];
      r.normalize();
    }
    q.normalize();
    return {q, r};
  }

  //! Monic gcd.  Euclid over the fraction field swells coefficients
  //! exponentially, so clear denominators and run a primitive polynomial
  //! remainder sequence over the Gaussian integers instead.
  static ZetaPoly gcd(const ZetaPoly& a, const ZetaPoly& b);

  GaussianRational eval(const GaussianRational& z) const {
    GaussianRational v(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * z + *it;
    return v;
  }
  std::complex<double> eval(const std::complex<double>& z) const {
    std::complex<double> v(0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      std::complex<double> c(static_cast<double>(it->re), static_cast<double>(it->im));
      v = v * z + c;
    }
    return v;
  }

  //! Substitute zeta -> w + z0, returning a polynomial in w.
  ZetaPoly shift(const GaussianRational& z0) const {
    ZetaPoly r;  // Horner in (w + z0)
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      // r = r*(w+z0) + c
      ZetaPoly next;
      next.coeffs.assign(r.coeffs.size() + 1, GaussianRational(0));
      for (size_t k = 0; k < r.coeffs.size(); ++k) {
        next.coeffs[k + 1] += r.coeffs[k];
        next.coeffs[k] += r.coeffs[k] * z0;
      }
      if (next.coeffs.empty()) next.coeffs.push_back(GaussianRational(0));
      next.coeffs[0] += *it;
      next.normalize();
      r = next;
    }
    return r;
  }

  friend bool operator==(const ZetaPoly& a, const ZetaPoly& b) { return a.coeffs == b.coeffs; }

  std::string to_string() const;
};

namespace detail {

struct GaussInt {
  Integer re{0}, im{0};
  bool is_zero() const { return re == 0 && im == 0; }
  friend GaussInt operator-(const GaussInt& a, const GaussInt& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
};

//! Nearest integer to p/q, q > 0.
inline Integer round_div(const Integer& p, const Integer& q) {
  Integer fl = (p >= 0) ? Integer(p / q) : Integer(-((-p + q - 1) / q));
  Integer rem = p - fl * q;
  return (2 * rem >= q) ? fl + 1 : fl;
}

//! Euclid in Z[i] with rounded quotients; the norm strictly decreases.
inline GaussInt gauss_gcd(GaussInt a, GaussInt b) {
  while (!b.is_zero()) {
    Integer n2 = b.re * b.re + b.im * b.im;
    GaussInt q{round_div(a.re * b.re + a.im * b.im, n2),
               round_div(a.im * b.re - a.re * b.im, n2)};
    GaussInt r = a - q * b;
    a = b;
    b = r;
  }
  return a;
}

using GPoly = std::vector<GaussInt>;  // coeffs[k] * zeta^k, trailing zeros stripped

inline void gp_normalize(GPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline void gp_make_primitive(GPoly& p) {
  GaussInt c{0, 0};
  for (const GaussInt& g : p) c = gauss_gcd(c, g);
  if (c.is_zero() || (c.re == 1 && c.im == 0)) return;
  Integer n2 = c.re * c.re + c.im * c.im;
  for (GaussInt& g : p) {
    Integer r = g.re * c.re + g.im * c.im;
    Integer i = g.im * c.re - g.re * c.im;
    g = {r / n2, i / n2};  // exact by construction
  }
}

//! Clear denominators: integer-coefficient version of a rational polynomial.
inline GPoly gp_from(const std::vector<GaussianRational>& coeffs) {
  Integer L = 1;
  for (const GaussianRational& c : coeffs) {
    for (const Integer& d : {rat_den(c.re), rat_den(c.im)}) {
      Integer g = boost::multiprecision::gcd(L, d);
      L = (L / g) * d;
    }
  }
  GPoly p;
  p.reserve(coeffs.size());
  for (const GaussianRational& c : coeffs) {
    Rational r = c.re * L, i = c.im * L;
    p.push_back({rat_num(r), rat_num(i)});
  }
  gp_normalize(p);
  return p;
}

//! One fraction-free reduction step: lc(b)^k * a mod b up to a scalar.
inline GPoly gp_prem(GPoly a, const GPoly& b) {
  GaussInt lcb = b.back();
  while (a.size() >= b.size()) {
    GaussInt lca = a.back();
    size_t d = a.size() - b.size();
    for (size_t k = 0; k + 1 < a.size(); ++k) a[k] = lcb * a[k];
    for (size_t k = 0; k < b.size(); ++k) a[k + d] = a[k + d] - lca * b[k];
    a.pop_back();
    gp_normalize(a);
    if (a.empty()) break;
  }
  return a;
}

}  // namespace detail

inline ZetaPoly ZetaPoly::gcd(const ZetaPoly& a, const ZetaPoly& b) {
  using namespace detail;
  if (a.is_zero() || b.is_zero()) {
    ZetaPoly r = a.is_zero() ? b : a;
    if (!r.is_zero()) {
      GaussianRational lead = r.leading();
      for (auto& c : r.coeffs) c = c / lead;
    }
    return r;
  }
  GPoly p = gp_from(a.coeffs), q = gp_from(b.coeffs);
  if (p.size() < q.size()) std::swap(p, q);
  gp_make_primitive(p);
  gp_make_primitive(q);
  while (true) {
    GPoly r = gp_prem(p, q);
    if (r.empty()) break;
    gp_make_primitive(r);
    p = std::move(q);
    q = std::move(r);
  }
  GaussianRational lead{Rational(q.back().re), Rational(q.back().im)};
  std::vector<GaussianRational> out;
  out.reserve(q.size());
  for (const GaussInt& g : q)
    out.push_back(GaussianRational{Rational(g.re), Rational(g.im)} / lead);
  return ZetaPoly(std::move(out));
}

//! Exact rational function of zeta.  Invariants: denominator monic and
//! nonzero, numerator and denominator coprime.  That normal form makes
//! equality a plain coefficient comparison.
class ZetaRational {
 public:
  ZetaRational() : num_(), den_(ZetaPoly::constant(1)) {}
  ZetaRational(int v) : num_(ZetaPoly::constant(GaussianRational(v))), den_(ZetaPoly::constant(1)) {}
  ZetaRational(Rational v) : num_(ZetaPoly::constant(GaussianRational(std::move(v)))), den_(ZetaPoly::constant(1)) {}
  ZetaRational(GaussianRational v) : num_(ZetaPoly::constant(std::move(v))), den_(ZetaPoly::constant(1)) {}
  ZetaRational(ZetaPoly n) : num_(std::move(n)), den_(ZetaPoly::constant(1)) {}
  ZetaRational(ZetaPoly n, ZetaPoly d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

  static ZetaRational zeta() { return ZetaRational(ZetaPoly::zeta()); }

  const ZetaPoly& num() const { return num_; }
  const ZetaPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

  //! Value of a degree-0 rational function; throws if zeta actually occurs.
  GaussianRational constant_value() const {
    if (!is_constant()) throw std::domain_error("ZetaRational is not constant");
    return num_.coeff(0);
  }

  friend ZetaRational operator+(const ZetaRational& a, const ZetaRational& b) { return add(a, b, false); }
  friend ZetaRational operator-(const ZetaRational& a, const ZetaRational& b) { return add(a, b, true); }
  ZetaRational operator-() const {
    ZetaRational r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend ZetaRational operator*(const ZetaRational& a, const ZetaRational& b) {
    if (a.is_zero() || b.is_zero()) return ZetaRational();
    // cross-reduce first; the surviving parts are pairwise coprime, so the
    // product needs no further gcd
    ZetaPoly an = a.num_, bd = b.den_, bn = b.num_, ad = a.den_;
    cancel(an, bd);
    cancel(bn, ad);
    ZetaRational r;
    r.num_ = an * bn;
    r.den_ = ad * bd;
    r.make_monic();
    return r;
  }
  friend ZetaRational operator/(const ZetaRational& a, const ZetaRational& b) {
    if (b.is_zero()) throw std::domain_error("ZetaRational division by zero");
    if (a.is_zero()) return ZetaRational();
    ZetaPoly an = a.num_, bn = b.num_, ad = a.den_, bd = b.den_;
    cancel(an, bn);
    cancel(bd, ad);
    ZetaRational r;
    r.num_ = an * bd;
    r.den_ = ad * bn;
    r.make_monic();
    return r;
  }
  ZetaRational& operator+=(const ZetaRational& b) { return *this = *this + b; }
  ZetaRational& operator-=(const ZetaRational& b) { return *this = *this - b; }
  ZetaRational& operator*=(const ZetaRational& b) { return *this = *this * b; }
  ZetaRational& operator/=(const ZetaRational& b) { return *this = *this / b; }

  friend bool operator==(const ZetaRational& a, const ZetaRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const ZetaRational& a, const ZetaRational& b) { return !(a == b); }
  // Deterministic ordering for containers/rendering only.
  friend bool operator<(const ZetaRational& a, const ZetaRational& b);

  GaussianRational eval(const GaussianRational& z) const {
    GaussianRational d = den_.eval(z);
    if (d.is_zero()) throw std::domain_error("ZetaRational evaluated at a pole");
    return num_.eval(z) / d;
  }
  std::complex<double> eval(const std::complex<double>& z) const { return num_.eval(z) / den_.eval(z); }

  std::string to_string() const;

 private:
  // divide out gcd(a, b) from both, in place
  static void cancel(ZetaPoly& a, ZetaPoly& b) {
    if (a.degree() <= 0 || b.degree() <= 0) return;
    ZetaPoly g = ZetaPoly::gcd(a, b);
    if (g.degree() > 0) {
      a = ZetaPoly::divmod(a, g).first;
      b = ZetaPoly::divmod(b, g).first;
    }
  }

  static ZetaRational add(const ZetaRational& a, const ZetaRational& b, bool sub) {
    auto comb = [&](const ZetaPoly& x, const ZetaPoly& y) { return sub ? x - y : x + y; };
    if (a.den_ == b.den_) return ZetaRational(comb(a.num_, b.num_), a.den_);
    ZetaPoly da = a.den_, db = b.den_;
    ZetaPoly g = ZetaPoly::gcd(da, db);
    if (g.degree() > 0) {
      da = ZetaPoly::divmod(da, g).first;  // a.den / g
      db = ZetaPoly::divmod(db, g).first;  // b.den / g
      ZetaRational r(comb(a.num_ * db, b.num_ * da), a.den_ * db);
      return r;
    }
    // coprime denominators: the combination is already reduced
    ZetaRational r;
    r.num_ = comb(a.num_ * b.den_, b.num_ * a.den_);
    if (r.num_.is_zero()) {
      r.den_ = ZetaPoly::constant(1);
      return r;
    }
    r.den_ = a.den_ * b.den_;
    r.make_monic();
    return r;
  }

  void make_monic() {
    GaussianRational lead = den_.leading();
    if (lead == GaussianRational(1)) return;
    for (auto& c : num_.coeffs) c = c / lead;
    for (auto& c : den_.coeffs) c = c / lead;
  }

  void reduce() {
    if (den_.is_zero()) throw std::domain_error("ZetaRational with zero denominator");
    if (num_.is_zero()) {
      den_ = ZetaPoly::constant(1);
      return;
    }
    ZetaPoly g = ZetaPoly::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = ZetaPoly::divmod(num_, g).first;
      den_ = ZetaPoly::divmod(den_, g).first;
    }
    GaussianRational lead = den_.leading();
    for (auto& c : num_.coeffs) c = c / lead;
    for (auto& c : den_.coeffs) c = c / lead;
  }

  ZetaPoly num_, den_;
};

//! Laurent data of f at z0: pole order m >= 0 (0 = regular point) and the
//! first `count` Laurent coefficients, starting with that of (zeta-z0)^{-m}.
//! For a regular point the first coefficient is f(z0).
struct PoleData {
  int order = 0;
  std::vector<GaussianRational> coefficients;

  //! Coefficient of (zeta - z0)^k in the Laurent expansion, k >= -order.
  GaussianRational laurent(int k) const {
    int idx = k + order;
    if (idx < 0 || idx >= static_cast<int>(coefficients.size())) return GaussianRational(0);
    return coefficients[idx];
  }
  GaussianRational residue() const { return laurent(-1); }
};

inline PoleData pole_data(const ZetaRational& f, const GaussianRational& z0, int count = 4) {
  PoleData pd;
  if (f.is_zero()) {
    pd.coefficients.assign(std::max(count, 1), GaussianRational(0));
    return pd;
  }
  // Shift to w = zeta - z0.  num and den are coprime, so the pole order is
  // the multiplicity of the root w = 0 of the shifted denominator.
  ZetaPoly n = f.num().shift(z0);
  ZetaPoly d = f.den().shift(z0);
  int m = 0;
  while (d.coeff(m).is_zero()) ++m;
  pd.order = m;
  // Taylor-divide n by d/w^m: with dt[k] = d.coeff(k+m), solve
  // n = (sum c_k w^k) * dt termwise.
  std::vector<GaussianRational> c(std::max(count, 1), GaussianRational(0));
  GaussianRational dt0 = d.coeff(m);
  for (int k = 0; k < static_cast<int>(c.size()); ++k) {
    GaussianRational s = n.coeff(k);
    for (int j = 0; j < k; ++j) s -= c[j] * d.coeff(k - j + m);
    c[k] = s / dt0;
  }
  pd.coefficients = std::move(c);
  return pd;
}

// ---- rendering ----

inline std::string ZetaPoly::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (int k = degree(); k >= 0; --k) {
    GaussianRational c = coeff(k);
    if (c.is_zero()) continue;
    std::string cs = c.to_string();
    bool needs_paren = cs.find('+') != std::string::npos ||
                       (cs.rfind('-') != std::string::npos && cs.rfind('-') > 0);
    if (!s.empty()) s += " + ";
    if (k == 0) {
      s += needs_paren ? "(" + cs + ")" : cs;
    } else {
      std::string var = (k == 1) ? "zeta" : "zeta^" + std::to_string(k);
      if (c == GaussianRational(1)) s += var;
      else if (c == GaussianRational(-1)) s += "-" + var;
      else s += (needs_paren ? "(" + cs + ")" : cs) + "*" + var;
    }
  }
  return s;
}

inline std::string ZetaRational::to_string() const {
  if (den_.degree() == 0 && den_.coeff(0) == GaussianRational(1)) {
    if (num_.degree() <= 0) return num_.to_string();
    return "(" + num_.to_string() + ")";
  }
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

inline bool operator<(const ZetaRational& a, const ZetaRational& b) {
  return a.to_string() < b.to_string();
}

}  // namespace phgscat

#endif
