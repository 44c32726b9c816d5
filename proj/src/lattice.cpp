#include "hecke/lattice.hpp"

#include <cstdlib>
#include <stdexcept>

namespace hecke {

namespace {

void row_swap(IntMat& m, size_t i, size_t j) { std::swap(m[i], m[j]); }

void row_addmul(IntMat& m, size_t dst, size_t src, Int c) {
  for (size_t k = 0; k < m[dst].size(); ++k) m[dst][k] += c * m[src][k];
}

void col_swap(IntMat& m, size_t i, size_t j) {
  for (auto& row : m) std::swap(row[i], row[j]);
}

void col_addmul(IntMat& m, size_t dst, size_t src, Int c) {
  for (auto& row : m) row[dst] += c * row[src];
}

}  // namespace

SmithForm smith_form(IntMat a) {
  size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
  SmithForm f;
  f.u = mat_identity(rows);
  f.v = mat_identity(cols);
  size_t t = 0;
  while (t < rows && t < cols) {
    // locate a nonzero pivot of minimal absolute value in the remaining block
    size_t pi = t, pj = t;
    Int best = 0;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (best == 0 || std::llabs(a[i][j]) < best)) {
          best = std::llabs(a[i][j]);
          pi = i; pj = j;
        }
    if (best == 0) break;
    row_swap(a, t, pi); row_swap(f.u, t, pi);
    col_swap(a, t, pj); col_swap(f.v, t, pj);
    bool clean = true;
    for (size_t i = t + 1; i < rows; ++i) {
      Int q = a[i][t] / a[t][t];
      if (q != 0) { row_addmul(a, i, t, -q); row_addmul(f.u, i, t, -q); }
      if (a[i][t] != 0) clean = false;
    }
    for (size_t j = t + 1; j < cols; ++j) {
      Int q = a[t][j] / a[t][t];
      if (q != 0) { col_addmul(a, j, t, -q); col_addmul(f.v, j, t, -q); }
      if (a[t][j] != 0) clean = false;
    }
    if (!clean) continue;  // remainder left behind; redo this pivot
    // enforce divisibility d_t | a[i][j]
    bool divides = true;
    for (size_t i = t + 1; i < rows && divides; ++i)
      for (size_t j = t + 1; j < cols && divides; ++j)
        if (a[i][j] % a[t][t] != 0) {
          row_addmul(a, t, i, 1); row_addmul(f.u, t, i, 1);
          divides = false;
        }
    if (!divides) continue;
    if (a[t][t] < 0) {
      for (size_t j = 0; j < cols; ++j) a[t][j] = -a[t][j];
      for (size_t j = 0; j < rows; ++j) f.u[t][j] = -f.u[t][j];
    }
    ++t;
  }
  f.s = a;
  for (size_t i = 0; i < t; ++i) f.diag.push_back(a[i][i]);
  return f;
}

std::vector<Vec> integer_kernel(const IntMat& a) {
  if (a.empty()) return {};
  size_t cols = a[0].size();
  SmithForm f = smith_form(a);
  size_t r = f.diag.size();
  // kernel basis = last cols-r columns of V
  std::vector<Vec> basis;
  for (size_t j = r; j < cols; ++j) {
    Vec b(cols);
    for (size_t i = 0; i < cols; ++i) b[i] = f.v[i][j];
    basis.push_back(b);
  }
  return basis;
}

std::vector<Rational> solve_rational(const IntMat& a, const std::vector<Rational>& b) {
  size_t n = a.size();
  if (n == 0) return {};
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) m[i][j] = Rational(a[i][j]);
    m[i][n] = b[i];
  }
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m[piv][col].is_zero()) ++piv;
    if (piv == n) throw std::domain_error("solve_rational: singular matrix");
    std::swap(m[col], m[piv]);
    Rational p = m[col][col];
    for (size_t j = col; j <= n; ++j) m[col][j] /= p;
    for (size_t i = 0; i < n; ++i) {
      if (i == col || m[i][col].is_zero()) continue;
      Rational c = m[i][col];
      for (size_t j = col; j <= n; ++j) m[i][j] -= c * m[col][j];
    }
  }
  std::vector<Rational> x(n);
  for (size_t i = 0; i < n; ++i) x[i] = m[i][n];
  return x;
}

}  // namespace hecke
