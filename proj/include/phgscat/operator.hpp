#ifndef PHGSCAT_OPERATOR_HPP
#define PHGSCAT_OPERATOR_HPP

#include <map>
#include <vector>

#include "phgscat/series.hpp"

namespace phgscat {

inline Rational binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Rational b(1);
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

//! Finite sum  sum_{a,beta} c_{a,beta}(x,y) (x d/dx)^a d_y^beta  with
//! polyhomogeneous-series coefficients.  beta is a multi-index over the
//! torus directions.
template <class S>
class OperatorSeries {
 public:
  using MultiIndex = std::vector<int>;
  using Key = std::pair<int, MultiIndex>;  // (a, beta)
  using TermMap = std::map<Key, PhgSeries<S>>;

  OperatorSeries() = default;
  OperatorSeries(int dim, int truncation) : dim_(dim), trunc_(truncation) {}

  int dim() const { return dim_; }
  int truncation() const { return trunc_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void set_coeff(int a, MultiIndex beta, PhgSeries<S> c) {
    if (static_cast<int>(beta.size()) != dim_)
      throw std::invalid_argument("operator: multi-index dimension mismatch");
    if (c.is_zero()) terms_.erase({a, std::move(beta)});
    else terms_[{a, std::move(beta)}] = std::move(c);
  }
  void add_coeff(int a, const MultiIndex& beta, const PhgSeries<S>& c) {
    if (c.is_zero()) return;
    auto it = terms_.find({a, beta});
    if (it == terms_.end()) set_coeff(a, beta, c);
    else {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  PhgSeries<S> coeff(int a, const MultiIndex& beta) const {
    auto it = terms_.find({a, beta});
    return it == terms_.end() ? PhgSeries<S>(dim_, trunc_) : it->second;
  }

  friend OperatorSeries operator+(const OperatorSeries& A, const OperatorSeries& B) {
    OperatorSeries r(A.dim_, std::min(A.trunc_, B.trunc_));
    for (const auto& [k, c] : A.terms_) r.add_coeff(k.first, k.second, c.truncated(r.trunc_));
    for (const auto& [k, c] : B.terms_) r.add_coeff(k.first, k.second, c.truncated(r.trunc_));
    return r;
  }
  friend OperatorSeries operator-(const OperatorSeries& A, const OperatorSeries& B) {
    return A + (-B);
  }
  OperatorSeries operator-() const {
    OperatorSeries r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
  }
  friend OperatorSeries operator*(const S& s, const OperatorSeries& A) {
    OperatorSeries r(A.dim_, A.trunc_);
    for (const auto& [k, c] : A.terms_) r.add_coeff(k.first, k.second, s * c);
    return r;
  }

  friend bool operator==(const OperatorSeries& A, const OperatorSeries& B) {
    return A.dim_ == B.dim_ && A.terms_ == B.terms_;
  }
  friend bool operator!=(const OperatorSeries& A, const OperatorSeries& B) { return !(A == B); }

  //! Apply to a series, exact through order J of the result.  The base tag
  //! of v is honored by x_dx (x d/dx brings down zeta or n - zeta).
  PhgSeries<S> apply(const PhgSeries<S>& v, int J) const {
    PhgSeries<S> out(dim_, J, v.tag(),
                     LogCap{std::max(1, v.cap().scale), v.cap().shift + cap_slack(J)});
    for (const auto& [key, c] : terms_) {
      PhgSeries<S> w = v.truncated(std::min(J, v.truncation()));
      for (int i = 0; i < dim_; ++i)
        for (int rep = 0; rep < key.second[i]; ++rep) w = w.partial_y(i);
      for (int rep = 0; rep < key.first; ++rep) w = w.x_dx();
      out = out + mul(c, w, J);
    }
    return out;
  }

  //! this . B as operators, exact modulo x^{J+1} in every coefficient.
  //! Uses the Leibniz expansion of (x d/dx)^a d^beta acting on a product.
  OperatorSeries compose(const OperatorSeries& B, int J) const {
    OperatorSeries r(dim_, J);
    for (const auto& [ka, ca] : terms_) {
      const auto& [a, beta] = ka;
      for (const auto& [kb, cb] : B.terms_) {
        const auto& [ap, betap] = kb;
        // distribute derivatives between cb and the remaining operator
        std::vector<MultiIndex> gammas = sub_indices(beta);
        for (int r_x = 0; r_x <= a; ++r_x) {
          Rational cx = binomial(a, r_x);
          for (const auto& gamma : gammas) {
            Rational cy(1);
            MultiIndex rem(dim_);
            for (int i = 0; i < dim_; ++i) {
              cy *= binomial(beta[i], gamma[i]);
              rem[i] = beta[i] - gamma[i] + betap[i];
            }
            PhgSeries<S> dcb = cb.truncated(std::min(J, cb.truncation()));
            for (int i = 0; i < dim_; ++i)
              for (int rep = 0; rep < gamma[i]; ++rep) dcb = dcb.partial_y(i);
            for (int rep = 0; rep < r_x; ++rep) dcb = dcb.x_dx();
            if (dcb.is_zero()) continue;
            PhgSeries<S> coeff_r =
                ring<S>::from_rational(cx * cy) * mul(ca, dcb, J);
            r.add_coeff(a - r_x + ap, rem, coeff_r);
          }
        }
      }
    }
    return r;
  }

  //! Conjugation identity in closed form: substituting
  //! x d/dx -> x d/dx + c turns x^{-c} P x^{c} into P for constant c.
  OperatorSeries shift_xdx(const S& c) const {
    OperatorSeries r(dim_, trunc_);
    for (const auto& [key, coeff] : terms_) {
      const auto& [a, beta] = key;
      S cpow = ring<S>::one();
      for (int k = a; k >= 0; --k) {
        // term binom(a,k) c^{a-k} (x d/dx)^k, built from high k down
        S factor = ring<S>::from_rational(binomial(a, k)) * cpow;
        r.add_coeff(k, beta, factor * coeff);
        cpow = cpow * c;
      }
    }
    return r;
  }

  //! Left multiplication by a series weight: w . P (zero-order operator
  //! composed with P).
  OperatorSeries left_multiply(const PhgSeries<S>& w, int J) const {
    OperatorSeries r(dim_, J);
    for (const auto& [key, coeff] : terms_) r.add_coeff(key.first, key.second, mul(w, coeff, J));
    return r;
  }

  std::string to_string() const {
    std::string s;
    for (const auto& [key, c] : terms_) {
      if (!s.empty()) s += "  +  ";
      std::string op;
      if (key.first > 0) op += "(xDx)^" + std::to_string(key.first);
      for (int i = 0; i < dim_; ++i)
        if (key.second[i] > 0) {
          op += "(Dy" + std::to_string(i + 1) + ")";
          if (key.second[i] > 1) op += "^" + std::to_string(key.second[i]);
        }
      if (op.empty()) op = "1";
      s += "[" + c.to_string() + "] " + op;
    }
    return s.empty() ? "0" : s;
  }

 private:
  static int cap_slack(int J) { return 2 * (J + 2); }
  //! All gamma with 0 <= gamma_i <= beta_i.
  static std::vector<MultiIndex> sub_indices(const MultiIndex& beta) {
    std::vector<MultiIndex> out{MultiIndex(beta.size(), 0)};
    for (size_t i = 0; i < beta.size(); ++i) {
      std::vector<MultiIndex> next;
      for (const auto& g : out)
        for (int v = 0; v <= beta[i]; ++v) {
          MultiIndex g2 = g;
          g2[i] = v;
          next.push_back(std::move(g2));
        }
      out = std::move(next);
    }
    return out;
  }

  int dim_ = 0;
  int trunc_ = 0;
  TermMap terms_;
};

}  // namespace phgscat

#endif
