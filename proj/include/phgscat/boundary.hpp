#ifndef PHGSCAT_BOUNDARY_HPP
#define PHGSCAT_BOUNDARY_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "phgscat/linalg.hpp"
#include "phgscat/ring.hpp"

namespace phgscat {

//! Trigonometric polynomial on the flat torus boundary: a finite sum of
//! complex exponentials e^{i xi.y} with exact coefficients.  Zero
//! coefficients are never stored.
template <class S>
class BoundaryFunction {
 public:
  using Frequency = std::vector<int>;
  using TermMap = std::map<Frequency, S>;

  BoundaryFunction() = default;
  explicit BoundaryFunction(int dim) : dim_(dim) {}
  BoundaryFunction(int dim, S constant) : dim_(dim) {
    set(Frequency(dim, 0), std::move(constant));
  }
  static BoundaryFunction mode(int dim, Frequency xi, S coeff = ring<S>::one()) {
    BoundaryFunction f(dim);
    f.set(std::move(xi), std::move(coeff));
    return f;
  }

  int dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Frequency(dim_, 0));
  }

  S coeff(const Frequency& xi) const {
    auto it = terms_.find(xi);
    return it == terms_.end() ? ring<S>::zero() : it->second;
  }

  void set(Frequency xi, S c) {
    if (static_cast<int>(xi.size()) != dim_) throw std::invalid_argument("frequency dimension mismatch");
    if (ring<S>::is_zero(c)) terms_.erase(xi);
    else terms_[std::move(xi)] = std::move(c);
  }
  void add_term(const Frequency& xi, const S& c) {
    auto it = terms_.find(xi);
    if (it == terms_.end()) {
      if (!ring<S>::is_zero(c)) terms_[xi] = c;
    } else {
      it->second = it->second + c;
      if (ring<S>::is_zero(it->second)) terms_.erase(it);
    }
  }

  friend BoundaryFunction operator+(const BoundaryFunction& a, const BoundaryFunction& b) {
    check_dims(a, b);
    BoundaryFunction r = a;
    for (const auto& [xi, c] : b.terms_) r.add_term(xi, c);
    return r;
  }
  friend BoundaryFunction operator-(const BoundaryFunction& a, const BoundaryFunction& b) {
    check_dims(a, b);
    BoundaryFunction r = a;
    for (const auto& [xi, c] : b.terms_) r.add_term(xi, -c);
    return r;
  }
  BoundaryFunction operator-() const {
    BoundaryFunction r(dim_);
    for (const auto& [xi, c] : terms_) r.terms_[xi] = -c;
    return r;
  }
  //! Exact product of trigonometric polynomials (frequency convolution).
  friend BoundaryFunction operator*(const BoundaryFunction& a, const BoundaryFunction& b) {
    check_dims(a, b);
    BoundaryFunction r(a.dim_);
    for (const auto& [xa, ca] : a.terms_)
      for (const auto& [xb, cb] : b.terms_) {
        Frequency xi(a.dim_);
        for (int i = 0; i < a.dim_; ++i) xi[i] = xa[i] + xb[i];
        r.add_term(xi, ca * cb);
      }
    return r;
  }
  friend BoundaryFunction operator*(const S& s, const BoundaryFunction& f) {
    BoundaryFunction r(f.dim_);
    for (const auto& [xi, c] : f.terms_) r.add_term(xi, s * c);
    return r;
  }
  BoundaryFunction scalar_div(const S& s) const {
    BoundaryFunction r(dim_);
    for (const auto& [xi, c] : terms_) r.add_term(xi, c / s);
    return r;
  }
  friend bool operator==(const BoundaryFunction& a, const BoundaryFunction& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const BoundaryFunction& a, const BoundaryFunction& b) { return !(a == b); }

  //! d/dy_i : e^{i xi.y} -> i xi_i e^{i xi.y}.
  BoundaryFunction partial(int i) const
    requires(ring<S>::has_imag)
  {
    BoundaryFunction r(dim_);
    S iu = ring<S>::imag_unit();
    for (const auto& [xi, c] : terms_) {
      if (xi[i] == 0) continue;
      S factor = iu;
      S k = ring<S>::from_rational(Rational(xi[i]));
      r.add_term(xi, factor * k * c);
    }
    return r;
  }

  //! Flat Laplacian with constant metric h0: e^{i xi.y} -> (xi.h0^{-1}.xi) e^{i xi.y}.
  //! Positive-spectrum convention; h0 must be symmetric positive definite.
  BoundaryFunction flat_laplacian(const RationalMatrix& h0) const {
    if (!h0.is_positive_definite())
      throw std::domain_error("flat_laplacian: h0 is not positive definite");
    RationalMatrix h0inv = h0.inverse();
    BoundaryFunction r(dim_);
    for (const auto& [xi, c] : terms_)
      r.add_term(xi, ring<S>::from_rational(h0inv.quadratic_form(xi)) * c);
    return r;
  }

  //! Value at y = 0 (every exponential equals 1).
  S eval_at_origin() const {
    S v = ring<S>::zero();
    for (const auto& [xi, c] : terms_) v = v + c;
    return v;
  }

  //! Reality constraint for tensors/metrics: c_{-xi} = conj(c_xi).
  bool is_real() const
    requires std::is_same_v<S, GaussianRational>
  {
    for (const auto& [xi, c] : terms_) {
      Frequency neg(dim_);
      for (int i = 0; i < dim_; ++i) neg[i] = -xi[i];
      if (coeff(neg) != c.conj()) return false;
    }
    return true;
  }

  template <class T, class F>
  BoundaryFunction<T> map_coeffs(F&& f) const {
    BoundaryFunction<T> r(dim_);
    for (const auto& [xi, c] : terms_) r.add_term(xi, f(c));
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [xi, c] : terms_) {
      if (!s.empty()) s += " + ";
      std::string cs = ring<S>::to_string(c);
      bool trivial_freq = true;
      for (int k : xi)
        if (k != 0) trivial_freq = false;
      if (trivial_freq) {
        s += cs;
      } else {
        std::string e = "e[";
        for (size_t i = 0; i < xi.size(); ++i) e += (i ? "," : "") + std::to_string(xi[i]);
        e += "]";
        s += (cs == "1") ? e : "(" + cs + ")*" + e;
      }
    }
    return s;
  }

 private:
  static void check_dims(const BoundaryFunction& a, const BoundaryFunction& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("BoundaryFunction dimension mismatch");
  }
  int dim_ = 0;
  TermMap terms_;
};

//! Symmetric matrix of boundary functions (a 2-tensor on the torus).
template <class S>
class BoundaryTensor {
 public:
  BoundaryTensor() = default;
  explicit BoundaryTensor(int dim) : dim_(dim), e_(dim * dim, BoundaryFunction<S>(dim)) {}

  int dim() const { return dim_; }
  const BoundaryFunction<S>& operator()(int i, int j) const { return e_[i * dim_ + j]; }

  //! Symmetric assignment: sets both (i,j) and (j,i).
  void set(int i, int j, BoundaryFunction<S> f) {
    e_[i * dim_ + j] = f;
    e_[j * dim_ + i] = std::move(f);
  }

  bool is_zero() const {
    for (const auto& f : e_)
      if (!f.is_zero()) return false;
    return true;
  }
  bool is_symmetric() const {
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }
  bool is_real() const
    requires std::is_same_v<S, GaussianRational>
  {
    for (const auto& f : e_)
      if (!f.is_real()) return false;
    return true;
  }

  friend bool operator==(const BoundaryTensor& a, const BoundaryTensor& b) {
    return a.dim_ == b.dim_ && a.e_ == b.e_;
  }

  BoundaryTensor scaled(const S& s) const {
    BoundaryTensor r(dim_);
    for (int i = 0; i < dim_ * dim_; ++i) r.e_[i] = s * e_[i];
    return r;
  }

  template <class T, class F>
  BoundaryTensor<T> map_coeffs(F&& f) const {
    BoundaryTensor<T> r(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) r.set(i, j, e_[i * dim_ + j].template map_coeffs<T>(f));
    return r;
  }

  //! Tr(a^{-1} . this) against a constant rational matrix a.
  BoundaryFunction<S> trace_against(const RationalMatrix& ainv) const {
    BoundaryFunction<S> t(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        t = t + ring<S>::from_rational(ainv(i, j)) * (*this)(j, i);
    return t;
  }

 private:
  int dim_ = 0;
  std::vector<BoundaryFunction<S>> e_;
};

}  // namespace phgscat

#endif
