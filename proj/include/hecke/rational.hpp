#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hecke {

// Exact rational arithmetic on 64-bit numerator/denominator.
// All intermediates go through __int128; anything that would not fit back
// into 64 bits throws std::overflow_error rather than silently wrapping.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const { return Rational(-num_, den_, tag{}); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    __int128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
    __int128 d = i128(a.den_) * b.den_;
    return from128(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    __int128 n = i128(a.num_) * b.den_ - i128(b.num_) * a.den_;
    __int128 d = i128(a.den_) * b.den_;
    return from128(n, d);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }

  double to_double() const { return double(num_) / double(den_); }

  Rational abs() const { return num_ < 0 ? -*this : *this; }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  struct tag {};
  Rational(long long n, long long d, tag) : num_(n), den_(d) {}

  using i128 = __int128;

  static Rational from128(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
      throw std::overflow_error("Rational: 64-bit overflow");
    return Rational((long long)n, (long long)d, tag{});
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b) { __int128 t = a % b; a = b; b = t; }
    return a == 0 ? 1 : a;
  }

  void normalize() {
    Rational r = from128(num_, den_);
    num_ = r.num_;
    den_ = r.den_;
  }

  long long num_;
  long long den_;  // > 0
};

}  // namespace hecke
