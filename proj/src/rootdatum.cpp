#include "hecke/rootdatum.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hecke/errors.hpp"

namespace hecke {

namespace {

// Solve sum_i c_i b_i = v over Q for independent b_i; nullopt if v outside span.
std::optional<std::vector<Rational>> span_solve(const std::vector<Vec>& basis, const Vec& v) {
  if (basis.empty()) {
    if (is_zero(v)) return std::vector<Rational>{};
    return std::nullopt;
  }
  size_t n = v.size(), m = basis.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(m + 1));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) a[i][j] = Rational(basis[j][i]);
    a[i][m] = Rational(v[i]);
  }
  size_t row = 0;
  std::vector<int> pivot_col(m, -1);
  for (size_t col = 0; col < m && row < n; ++col) {
    size_t p = row;
    while (p < n && a[p][col].is_zero()) ++p;
    if (p == n) continue;
    std::swap(a[row], a[p]);
    Rational pv = a[row][col];
    for (size_t j = col; j <= m; ++j) a[row][j] /= pv;
    for (size_t i = 0; i < n; ++i) {
      if (i == row || a[i][col].is_zero()) continue;
      Rational c = a[i][col];
      for (size_t j = col; j <= m; ++j) a[i][j] -= c * a[row][j];
    }
    pivot_col[col] = (int)row;
    ++row;
  }
  std::vector<Rational> x(m, Rational(0));
  for (size_t col = 0; col < m; ++col)
    if (pivot_col[col] >= 0) x[col] = a[pivot_col[col]][m];
  // consistency: residual rows must vanish
  for (size_t i = 0; i < n; ++i) {
    Rational s(0);
    for (size_t j = 0; j < m; ++j) s += x[j] * Rational(basis[j][i]);
    if (!(s == Rational(v[i]))) return std::nullopt;
  }
  return x;
}

IntMat int_inverse(const IntMat& m) {
  size_t n = m.size();
  IntMat inv(n, Vec(n));
  for (size_t j = 0; j < n; ++j) {
    std::vector<Rational> e(n, Rational(0));
    e[j] = Rational(1);
    auto col = solve_rational(m, e);
    for (size_t i = 0; i < n; ++i) {
      if (!col[i].is_integer()) throw std::domain_error("int_inverse: not unimodular");
      inv[i][j] = col[i].num();
    }
  }
  return inv;
}

// Projection X -> X/K for a saturated sublattice K, as an integer matrix with
// full row rank (rows = coordinates on the quotient).
IntMat quotient_projection(int rank, const std::vector<Vec>& kernel_basis) {
  if (kernel_basis.empty()) return mat_identity(rank);
  IntMat b = kernel_basis;  // k x n
  SmithForm f = smith_form(b);
  for (Int d : f.diag)
    if (d != 1 && d != -1)
      throw std::domain_error("quotient_projection: sublattice not saturated");
  // rows of V^{-1} form a basis of Z^n whose first k members span K;
  // coordinates of x on that basis are V^T x, so drop the first k of them.
  size_t k = kernel_basis.size();
  IntMat vt = mat_transpose(f.v);
  IntMat proj(rank - k);
  for (size_t j = k; j < (size_t)rank; ++j) proj[j - k] = vt[j];
  return proj;
}

}  // namespace

int RootDatum::root_index(const Vec& r) const {
  for (int i = 0; i < (int)roots.size(); ++i)
    if (roots[i] == r) return i;
  return -1;
}

bool RootDatum::is_dominant(const Vec& x) const {
  for (int i = 0; i < num_simple(); ++i)
    if (dot(x, simple_coroot(i)) < 0) return false;
  return true;
}

bool RootDatum::is_positive_root_vec(const Vec& r) const {
  int idx = root_index(r);
  if (idx < 0) return false;
  return std::find(positive.begin(), positive.end(), idx) != positive.end();
}

void RootDatum::finalize() {
  positive.clear();
  std::vector<Vec> sroots;
  for (int s : simple) sroots.push_back(roots[s]);
  for (int i = 0; i < (int)roots.size(); ++i) {
    auto c = span_solve(sroots, roots[i]);
    if (!c) continue;  // validate() reports this
    bool nonneg = true;
    for (auto& q : *c) nonneg = nonneg && !(q < Rational(0));
    if (nonneg) positive.push_back(i);
  }
  // Z_X = integer kernel of the pairing with all coroots
  IntMat rows;
  for (auto& cv : coroots) rows.push_back(cv);
  if (rows.empty()) {
    zx_basis = {};
    for (int i = 0; i < rank; ++i) {
      Vec e(rank, 0);
      e[i] = 1;
      zx_basis.push_back(e);
    }
  } else {
    zx_basis = integer_kernel(rows);
  }
  rho_check.assign(rank, Rational(0));
  for (int i : positive)
    for (int k = 0; k < rank; ++k) rho_check[k] += Rational(coroots[i][k], 2);
  cartan.assign(num_simple(), Vec(num_simple(), 0));
  for (int i = 0; i < num_simple(); ++i)
    for (int j = 0; j < num_simple(); ++j)
      cartan[i][j] = dot(simple_root(i), simple_coroot(j));
}

RootDatum preset_datum(const std::string& name) {
  RootDatum d;
  d.name = name;
  auto push = [&](Vec r, Vec c) {
    d.roots.push_back(r);
    d.coroots.push_back(c);
    d.roots.push_back(neg(r));
    d.coroots.push_back(neg(c));
  };
  if (name == "A1-sc") {
    d.rank = 1;
    push({2}, {1});
    d.simple = {0};
  } else if (name == "A1-adj") {
    d.rank = 1;
    push({1}, {2});
    d.simple = {0};
  } else if (name == "A2") {
    // weight lattice realization: basis of fundamental weights
    d.rank = 2;
    push({2, -1}, {1, 0});
    push({-1, 2}, {0, 1});
    push({1, 1}, {1, 1});
    d.simple = {0, 2};
  } else if (name == "B2") {
    d.rank = 2;
    push({1, -1}, {1, -1});   // long simple
    push({0, 1}, {0, 2});     // short simple
    push({1, 0}, {2, 0});     // short
    push({1, 1}, {1, 1});     // long
    d.simple = {0, 2};
  } else {
    throw ValidationError("unknown preset '" + name + "'");
  }
  d.finalize();
  return d;
}

std::vector<std::string> preset_names() { return {"A1-sc", "A1-adj", "A2", "B2"}; }

std::vector<std::string> validate(const RootDatum& d) {
  std::vector<std::string> bad;
  auto report = [&](const std::string& tag, const std::string& what) {
    bad.push_back(tag + ": " + what);
  };
  if (d.rank <= 0) {
    report("rank", "rank must be positive");
    return bad;
  }
  for (auto& r : d.roots)
    if ((int)r.size() != d.rank) report("shape", "root of wrong dimension");
  for (auto& c : d.coroots)
    if ((int)c.size() != d.rank) report("shape", "coroot of wrong dimension");
  if (d.roots.size() != d.coroots.size()) report("shape", "root/coroot count mismatch");
  if (!bad.empty()) return bad;

  std::set<Vec> rootset(d.roots.begin(), d.roots.end());
  if (rootset.size() != d.roots.size()) report("duplicates", "repeated root");
  for (int s : d.simple)
    if (s < 0 || s >= (int)d.roots.size()) {
      report("simple", "simple index out of range");
      return bad;
    }

  // pairing normalization
  for (size_t i = 0; i < d.roots.size(); ++i)
    if (dot(d.roots[i], d.coroots[i]) != 2) {
      std::ostringstream os;
      os << "pairing <alpha,alpha v> != 2 at index " << i;
      report("pairing", os.str());
    }

  // reflection closure, on roots and coroots
  for (size_t i = 0; i < d.roots.size(); ++i)
    for (size_t j = 0; j < d.roots.size(); ++j) {
      Vec im = sub(d.roots[j], scale(dot(d.roots[j], d.coroots[i]), d.roots[i]));
      int idx = d.root_index(im);
      if (idx < 0) {
        report("reflection", "s_alpha(beta) escapes R0");
        continue;
      }
      Vec imc = sub(d.coroots[j], scale(dot(d.roots[i], d.coroots[j]), d.coroots[i]));
      if (!(d.coroots[idx] == imc)) report("reflection", "coroot misaligned under reflection");
    }

  // reduced
  for (auto& r : d.roots)
    if (rootset.count(scale(2, r))) report("reduced", "2*alpha is a root");

  // integrality and sign-coherence of simple-root expansions
  std::vector<Vec> sroots;
  for (int s : d.simple) sroots.push_back(d.roots[s]);
  for (auto& r : d.roots) {
    auto c = span_solve(sroots, r);
    if (!c) {
      report("span", "root outside the span of simple roots");
      continue;
    }
    bool allnn = true, allnp = true, integral = true;
    for (auto& q : *c) {
      integral = integral && q.is_integer();
      if (q < Rational(0)) allnn = false;
      if (Rational(0) < q) allnp = false;
    }
    if (!integral) report("integrality", "non-integer simple-root coefficients");
    if (!allnn && !allnp) report("signs", "mixed-sign simple-root coefficients");
  }

  // Z_X consistency: kernel of all coroots == kernel of simple coroots
  IntMat all_rows, simple_rows;
  for (auto& cv : d.coroots) all_rows.push_back(cv);
  for (int i = 0; i < d.num_simple(); ++i) simple_rows.push_back(d.simple_coroot(i));
  if (!simple_rows.empty()) {
    auto kern_simple = integer_kernel(simple_rows);
    for (auto& z : kern_simple) {
      for (auto& cv : d.coroots)
        if (dot(z, cv) != 0) {
          report("center", "X^+ cap X^- strictly larger than Z_X");
          break;
        }
    }
  }
  return bad;
}

NonReducedData nonreduced(const RootDatum& d) {
  NonReducedData nr;
  nr.r_nr = d.roots;
  for (size_t i = 0; i < d.roots.size(); ++i) {
    bool even = true;
    for (Int c : d.coroots[i]) even = even && (c % 2 == 0);
    if (even) nr.r_nr.push_back(scale(2, d.roots[i]));
  }
  std::set<Vec> all(nr.r_nr.begin(), nr.r_nr.end());
  for (auto& r : nr.r_nr)
    if (!all.count(scale(2, r))) nr.r_1.push_back(r);
  return nr;
}

ParabolicSystem standard_parabolic(const RootDatum& d, const std::vector<int>& P) {
  for (int p : P)
    if (p < 0 || p >= d.num_simple()) throw ValidationError("parabolic index out of range");
  ParabolicSystem ps;
  ps.gens = P;
  std::vector<Vec> proots;
  for (int p : P) proots.push_back(d.simple_root(p));
  for (int i = 0; i < d.num_roots(); ++i) {
    auto c = span_solve(proots, d.roots[i]);
    if (!c) continue;
    bool integral = true;
    for (auto& q : *c) integral = integral && q.is_integer();
    if (!integral) continue;  // ZP cap R0 wants integer combinations
    ps.roots.push_back(i);
    if (std::find(d.positive.begin(), d.positive.end(), i) != d.positive.end())
      ps.positive.push_back(i);
  }
  return ps;
}

QuotientData quotient_data(const RootDatum& d, const std::vector<int>& P) {
  ParabolicSystem ps = standard_parabolic(d, P);
  QuotientData qd;

  qd.sub.rank = d.rank;
  qd.sub.name = d.name + "^P";
  for (size_t k = 0; k < ps.roots.size(); ++k) {
    qd.sub.roots.push_back(d.roots[ps.roots[k]]);
    qd.sub.coroots.push_back(d.coroots[ps.roots[k]]);
  }
  for (int p : P) {
    int idx = -1;
    for (size_t k = 0; k < ps.roots.size(); ++k)
      if (ps.roots[k] == d.simple[p]) idx = (int)k;
    qd.sub.simple.push_back(idx);
  }
  qd.sub.finalize();

  // X_P = X / (X cap (R_P v)^perp)
  IntMat pair_rows;
  for (int p : P) pair_rows.push_back(d.simple_coroot(p));
  std::vector<Vec> perp =
      pair_rows.empty()
          ? [&] {
              std::vector<Vec> full;
              for (int i = 0; i < d.rank; ++i) {
                Vec e(d.rank, 0);
                e[i] = 1;
                full.push_back(e);
              }
              return full;
            }()
          : integer_kernel(pair_rows);
  qd.proj_xp = quotient_projection(d.rank, perp);

  // X^P = X / (X cap Q R_P): saturate the span of R_P inside X
  std::vector<Vec> rp_span_sat;
  if (!P.empty()) {
    IntMat root_rows;
    for (int p : P) root_rows.push_back(d.simple_root(p));
    auto ann = integer_kernel(root_rows);  // annihilator of R_P in Y
    if (ann.empty()) {
      for (int i = 0; i < d.rank; ++i) {
        Vec e(d.rank, 0);
        e[i] = 1;
        rp_span_sat.push_back(e);
      }
    } else {
      IntMat ann_rows;
      for (auto& a : ann) ann_rows.push_back(a);
      rp_span_sat = integer_kernel(ann_rows);
    }
  }
  qd.proj_xup = quotient_projection(d.rank, rp_span_sat);

  // the quotient datum R_P on the X_P coordinates
  int rank_p = (int)qd.proj_xp.size();
  qd.quotient.rank = rank_p;
  qd.quotient.name = d.name + "_P";
  if (rank_p > 0 || ps.roots.empty()) {
    // coroot of the image: pair with the rows of the inverse coordinate change
    // (values of the coroot on the chosen basis of X_P)
    // Build full unimodular map whose last rank_p rows are proj_xp.
    // quotient_projection produced proj from V^T; recompute V to recover W.
    IntMat b = perp;
    IntMat w_rows;  // basis of Z^n adapted to the kernel
    if (b.empty()) {
      w_rows = mat_identity(d.rank);
    } else {
      SmithForm f = smith_form(b);
      w_rows = int_inverse(f.v);  // rows: first k span kernel
    }
    size_t k = perp.size();
    for (size_t idx = 0; idx < ps.roots.size(); ++idx) {
      const Vec& beta = d.roots[ps.roots[idx]];
      const Vec& betav = d.coroots[ps.roots[idx]];
      Vec img = mat_apply(qd.proj_xp, beta);
      Vec imgv(rank_p);
      for (int j = 0; j < rank_p; ++j) imgv[j] = dot(w_rows[k + j], betav);
      qd.quotient.roots.push_back(img);
      qd.quotient.coroots.push_back(imgv);
      qd.root_origin.push_back(ps.roots[idx]);
    }
    for (int p : P) {
      int idx = -1;
      for (size_t t = 0; t < ps.roots.size(); ++t)
        if (ps.roots[t] == d.simple[p]) idx = (int)t;
      qd.quotient.simple.push_back(idx);
    }
  }
  qd.quotient.finalize();
  if (rank_p > 0) {
    auto bad = validate(qd.quotient);
    if (!bad.empty())
      throw ValidationError("quotient_data produced an invalid datum: " + bad.front());
  }
  return qd;
}

std::optional<std::vector<Rational>> in_simple_span(const RootDatum& d, const Vec& v) {
  std::vector<Vec> sroots;
  for (int s : d.simple) sroots.push_back(d.roots[s]);
  return span_solve(sroots, v);
}

}  // namespace hecke
