#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <string>

#include "hecke/rational.hpp"

namespace hecke {

// Laurent polynomial in the formal variable v (v^2 = q), with rational
// coefficients.  This is the coefficient ring of the Hecke algebra; all label
// roots q(s)^{1/2} = v^{f_s} live here when the label exponents are integers.
// Zero coefficients are never stored.
class Laurent {
 public:
  Laurent() = default;
  Laurent(const Rational& c) { if (!c.is_zero()) coeffs_[0] = c; }
  Laurent(long long c) : Laurent(Rational(c)) {}

  static Laurent monomial(const Rational& c, int deg) {
    Laurent p;
    if (!c.is_zero()) p.coeffs_[deg] = c;
    return p;
  }
  static Laurent v(int deg = 1) { return monomial(Rational(1), deg); }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const {
    return coeffs_.size() == 1 && coeffs_.begin()->first == 0 &&
           coeffs_.begin()->second == Rational(1);
  }
  // Nonzero single term c*v^k.
  bool is_monomial() const { return coeffs_.size() == 1; }
  int min_degree() const { return coeffs_.begin()->first; }
  int max_degree() const { return coeffs_.rbegin()->first; }
  const Rational& coeff(int deg) const {
    static const Rational zero(0);
    auto it = coeffs_.find(deg);
    return it == coeffs_.end() ? zero : it->second;
  }
  const std::map<int, Rational>& terms() const { return coeffs_; }

  Laurent operator-() const {
    Laurent p;
    for (auto& [d, c] : coeffs_) p.coeffs_[d] = -c;
    return p;
  }

  friend Laurent operator+(const Laurent& a, const Laurent& b) {
    Laurent p = a;
    p += b;
    return p;
  }
  friend Laurent operator-(const Laurent& a, const Laurent& b) {
    Laurent p = a;
    p -= b;
    return p;
  }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent p;
    for (auto& [da, ca] : a.coeffs_)
      for (auto& [db, cb] : b.coeffs_) p.add_term(da + db, ca * cb);
    return p;
  }

  Laurent& operator+=(const Laurent& o) {
    for (auto& [d, c] : o.coeffs_) add_term(d, c);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    for (auto& [d, c] : o.coeffs_) add_term(d, -c);
    return *this;
  }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  // Division by a monomial divisor; the only division the exact layer needs.
  Laurent div_monomial(const Laurent& m) const {
    if (!m.is_monomial()) throw std::domain_error("Laurent: non-monomial divisor");
    int d0 = m.coeffs_.begin()->first;
    const Rational& c0 = m.coeffs_.begin()->second;
    Laurent p;
    for (auto& [d, c] : coeffs_) p.coeffs_[d - d0] = c / c0;
    return p;
  }

  friend bool operator==(const Laurent& a, const Laurent& b) {
    return a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }
  friend bool operator<(const Laurent& a, const Laurent& b) {
    return a.coeffs_ < b.coeffs_;
  }

  double eval(double v) const {
    double s = 0;
    for (auto& [d, c] : coeffs_) s += c.to_double() * std::pow(v, d);
    return s;
  }

  void add_term(int deg, const Rational& c) {
    auto it = coeffs_.find(deg);
    if (it == coeffs_.end()) {
      if (!c.is_zero()) coeffs_[deg] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  // Canonical ascending-exponent form, e.g. "3v^-1 + v^2".
  std::string str() const;
  // Inverse of str(); accepts forms like "1", "-v", "3/2v^-4 + v^2".
  static Laurent parse(const std::string& text);

 private:
  std::map<int, Rational> coeffs_;
};

}  // namespace hecke
