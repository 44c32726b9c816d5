#pragma once

#include <vector>

#include "hecke/rational.hpp"

namespace hecke {

using Int = long long;
using Vec = std::vector<Int>;
using IntMat = std::vector<Vec>;  // row-major

inline Int dot(const Vec& a, const Vec& b) {
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Vec add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec scale(Int c, const Vec& a) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline Vec neg(const Vec& a) { return scale(-1, a); }

inline bool is_zero(const Vec& a) {
  for (Int x : a) if (x != 0) return false;
  return true;
}

// y = M x (rows of M dotted with x).
inline Vec mat_apply(const IntMat& m, const Vec& x) {
  Vec y(m.size());
  for (size_t i = 0; i < m.size(); ++i) y[i] = dot(m[i], x);
  return y;
}

inline IntMat mat_mul(const IntMat& a, const IntMat& b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IntMat c(n, Vec(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < k; ++j)
      for (size_t l = 0; l < m; ++l) c[i][l] += a[i][j] * b[j][l];
  return c;
}

inline IntMat mat_transpose(const IntMat& a) {
  if (a.empty()) return {};
  IntMat t(a[0].size(), Vec(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

inline IntMat mat_identity(size_t n) {
  IntMat id(n, Vec(n, 0));
  for (size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

// Smith normal form: returns (U, S, V) with U*A*V = S, U and V unimodular,
// S diagonal with divisibility d1 | d2 | ...
struct SmithForm {
  IntMat u, s, v;
  std::vector<Int> diag;  // nonzero diagonal entries
};
SmithForm smith_form(IntMat a);

// Basis of {x : A x = 0} over the integers (columns of A index coordinates).
std::vector<Vec> integer_kernel(const IntMat& a);

// Solves A x = b over the rationals.  Throws std::domain_error if singular
// or inconsistent.  A is square of full rank in all our uses.
std::vector<Rational> solve_rational(const IntMat& a, const std::vector<Rational>& b);

}  // namespace hecke
