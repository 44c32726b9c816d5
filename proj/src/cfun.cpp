#include "hecke/cfun.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "hecke/errors.hpp"

namespace hecke {

bool operator==(const ExactPoint& a, const ExactPoint& b) {
  if (a.coords.size() != b.coords.size()) return false;
  for (size_t i = 0; i < a.coords.size(); ++i) {
    if (a.coords[i].sign != b.coords[i].sign) return false;
    if (!(a.coords[i].exp == b.coords[i].exp)) return false;
    if (!(a.coords[i].mult == b.coords[i].mult)) return false;
  }
  return true;
}

bool operator<(const ExactPoint& a, const ExactPoint& b) {
  auto key = [](const ExactPoint& t) {
    std::vector<std::tuple<int, Rational, Rational>> k;
    for (auto& c : t.coords) k.push_back({c.sign, c.exp, c.mult});
    return k;
  };
  return key(a) < key(b);
}

std::string exact_point_str(const ExactPoint& t) {
  std::ostringstream os;
  for (size_t i = 0; i < t.coords.size(); ++i) {
    if (i) os << ";";
    os << "(" << (t.coords[i].sign > 0 ? "+" : "-") << "," << t.coords[i].exp.str()
       << "," << t.coords[i].mult.str() << ")";
  }
  return os.str();
}

namespace {
Rational parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(std::stoll(s));
  return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}
}  // namespace

ExactPoint parse_exact_point(const std::string& text) {
  ExactPoint t;
  std::istringstream is(text);
  std::string part;
  while (std::getline(is, part, ';')) {
    auto l = part.find('(');
    auto r = part.find(')');
    if (l == std::string::npos || r == std::string::npos)
      throw ValidationError("bad exact point '" + text + "'");
    std::string body = part.substr(l + 1, r - l - 1);
    std::istringstream bs(body);
    std::string sgn, e, m;
    std::getline(bs, sgn, ',');
    std::getline(bs, e, ',');
    std::getline(bs, m, ',');
    ExactCoord c;
    c.sign = (sgn == "-") ? -1 : 1;
    c.exp = parse_rat(e);
    c.mult = m.empty() ? Rational(1) : parse_rat(m);
    if (!(Rational(0) < c.mult)) throw ValidationError("exact point multiplier must be positive");
    t.coords.push_back(c);
  }
  return t;
}

ExactCoord exact_char_value(const ExactPoint& t, const Vec& x) {
  ExactCoord v;
  v.sign = 1;
  v.exp = Rational(0);
  v.mult = Rational(1);
  for (size_t i = 0; i < x.size(); ++i) {
    Int k = x[i];
    if (k == 0) continue;
    if (t.coords[i].sign < 0 && (k % 2 != 0)) v.sign = -v.sign;
    v.exp += Rational(k) * t.coords[i].exp;
    Rational m = t.coords[i].mult;
    Rational acc(1);
    Int a = k < 0 ? -k : k;
    for (Int j = 0; j < a; ++j) acc *= m;
    if (k < 0) acc = Rational(1) / acc;
    v.mult *= acc;
  }
  return v;
}

ExactPoint exact_act(const WeylGroup& w, int u, const ExactPoint& t) {
  // x(u t) = (u^{-1} x)(t); coordinate i of u t is the value at e_i, and
  // u^{-1} e_i is the i-th column of the X-matrix of u^{-1}.
  int n = (int)t.coords.size();
  ExactPoint out;
  out.coords.resize(n);
  const IntMat& m = w.xmatrix(w.inv0(u));
  for (int i = 0; i < n; ++i) {
    Vec col(n);
    for (int r = 0; r < n; ++r) col[r] = m[r][i];
    out.coords[i] = exact_char_value(t, col);
  }
  return out;
}

CFunction::CFunction(const Algebra& alg) : alg_(&alg) {
  const RootDatum& d = alg.datum();
  const LabelFunction& lf = alg.labels();
  NonReducedData nr = nonreduced(d);
  r1_of_root_.assign(d.num_roots(), -1);
  for (auto& a : nr.r_1) {
    int idx = d.root_index(a);
    if (idx >= 0) {
      // alpha in R0 cap R_1, alpha/2 not in R0: rewritten numerator
      r1_.push_back(a);
      r1_of_root_[idx] = (int)r1_.size() - 1;
      std::vector<CFactor> fs;
      int f0 = lf.f0(idx);
      fs.push_back({a, +1, Rational(-f0), true, (int)r1_.size() - 1});
      fs.push_back({a, +1, Rational(0), false, (int)r1_.size() - 1});
      factors_.push_back(fs);
    } else {
      // doubled root alpha = 2 beta
      Vec beta = a;
      for (auto& c : beta) c /= 2;
      int bi = d.root_index(beta);
      if (bi < 0) throw std::logic_error("CFunction: doubled root without half");
      r1_.push_back(a);
      r1_of_root_[bi] = (int)r1_.size() - 1;
      int f0 = lf.f0(bi), f1 = lf.f1(bi);
      std::vector<CFactor> fs;
      // numerator (1 + q_{a1v}^{-1/2} theta_{-beta})(1 - q_{a1v}^{-1/2} q_{2a1v}^{-1} theta_{-beta})
      // with q_{a1v} = q^{f1-f0}, q_{2a1v} = q^{f0}
      fs.push_back({beta, -1, Rational(-(f1 - f0), 2), true, (int)r1_.size() - 1});
      fs.push_back({beta, +1, Rational(-(f1 - f0), 2) - Rational(f0), true, (int)r1_.size() - 1});
      // denominator (1 - theta_{-2 beta}) = (1 - theta_{-beta})(1 + theta_{-beta})
      fs.push_back({beta, +1, Rational(0), false, (int)r1_.size() - 1});
      fs.push_back({beta, -1, Rational(0), false, (int)r1_.size() - 1});
      factors_.push_back(fs);
    }
  }
}

std::complex<double> CFunction::c_alpha(const std::vector<std::complex<double>>& t,
                                        int r1_index, double q) const {
  std::complex<double> num = 1.0, den = 1.0;
  for (auto& f : factors_[r1_index]) {
    std::complex<double> mu_inv = 1.0;
    for (size_t i = 0; i < f.mu.size(); ++i) mu_inv *= std::pow(t[i], -(double)f.mu[i]);
    std::complex<double> val =
        1.0 - (double)f.sign * std::pow(q, f.exp.to_double()) * mu_inv;
    if (f.in_numerator)
      num *= val;
    else
      den *= val;
  }
  if (std::abs(den) < 1e-13)
    throw PoleAtPoint("c_alpha: denominator vanishes at r1 index " +
                      std::to_string(r1_index));
  return num / den;
}

std::complex<double> CFunction::c_product(const std::vector<std::complex<double>>& t,
                                          const std::vector<int>& S, double q) const {
  std::complex<double> prod = 1.0;
  for (int i : S) prod *= c_alpha(t, i, q);
  return prod;
}

std::vector<int> CFunction::complement_set(const std::vector<int>& P) const {
  const RootDatum& d = alg_->datum();
  ParabolicSystem ps = standard_parabolic(d, P);
  std::set<int> in_p(ps.roots.begin(), ps.roots.end());
  std::vector<int> out;
  for (int i : d.positive)
    if (!in_p.count(i)) out.push_back(r1_of_root_[i]);
  return out;
}

std::vector<int> CFunction::relative_set(const std::vector<int>& Q,
                                         const std::vector<int>& P) const {
  const RootDatum& d = alg_->datum();
  ParabolicSystem psq = standard_parabolic(d, Q);
  ParabolicSystem psp = standard_parabolic(d, P);
  std::set<int> in_q(psq.roots.begin(), psq.roots.end());
  std::set<int> in_p(psp.roots.begin(), psp.roots.end());
  std::vector<int> out;
  for (int i : d.positive)
    if (in_q.count(i) && !in_p.count(i)) out.push_back(r1_of_root_[i]);
  return out;
}

Int CFunction::pole_order(const ExactPoint& t) const {
  // (c(t) c(w0 t))^{-1} = prod over ALL alpha in R_1 of c_alpha(t)^{-1};
  // count vanishing numerator factors minus vanishing denominator factors.
  Int order = 0;
  auto vanishes = [&](const CFactor& f) {
    ExactCoord v = exact_char_value(t, f.mu);  // mu(t)
    // factor 1 - sign q^e mu(t)^{-1} = 0 iff mu(t) = sign q^e
    return (v.sign == f.sign) && (v.exp == f.exp) && (v.mult == Rational(1));
  };
  for (size_t i = 0; i < r1_.size(); ++i)
    for (auto& f : factors_[i])
      if (vanishes(f)) order += f.in_numerator ? +1 : -1;
  return order;
}

std::vector<std::vector<ExactPoint>> CFunction::residual_orbits(int grid_bound) const {
  const RootDatum& d = alg_->datum();
  if (!d.is_semisimple()) return {};
  if (d.rank > 2) throw Unsupported("residual search capped at rank 2");
  Int rank = d.rank;
  std::vector<Rational> exps;
  for (int twice = -2 * grid_bound; twice <= 2 * grid_bound; ++twice)
    exps.push_back(Rational(twice, 2));
  std::vector<ExactPoint> found;
  std::vector<size_t> idx(rank, 0);
  std::vector<int> signs(rank, 0);
  Int total = 1;
  for (int i = 0; i < rank; ++i) total *= (Int)exps.size() * 2;
  for (Int code = 0; code < total; ++code) {
    Int c = code;
    ExactPoint t;
    t.coords.resize(rank);
    for (int i = 0; i < rank; ++i) {
      Int e = c % (Int)exps.size();
      c /= (Int)exps.size();
      Int s = c % 2;
      c /= 2;
      t.coords[i].exp = exps[e];
      t.coords[i].sign = s ? -1 : 1;
      t.coords[i].mult = Rational(1);
    }
    if (pole_order(t) == rank) found.push_back(t);
  }
  // group into W0-orbits
  std::vector<std::vector<ExactPoint>> orbits;
  std::set<ExactPoint> seen;
  for (auto& t : found) {
    if (seen.count(t)) continue;
    std::set<ExactPoint> orbit;
    for (int u = 0; u < alg_->weyl().order(); ++u) orbit.insert(exact_act(alg_->weyl(), u, t));
    for (auto& p : orbit) seen.insert(p);
    orbits.push_back(std::vector<ExactPoint>(orbit.begin(), orbit.end()));
  }
  return orbits;
}

bool CFunction::cster_check(const ExactPoint& r) const {
  const RootDatum& d = alg_->datum();
  const WeylGroup& w = alg_->weyl();
  // polar parts: s = sign vector, c = q^exp part (multiplier must be 1)
  for (auto& c : r.coords)
    if (!(c.mult == Rational(1))) return false;
  ExactPoint rstar = r;
  for (auto& c : rstar.coords) c.exp = -c.exp;
  // R_{s,1} = {alpha in R_1 : alpha(s) = 1}; alpha(s) depends on signs only
  std::vector<int> gens;
  for (size_t i = 0; i < r1_.size(); ++i) {
    int sgn = 1;
    for (size_t k = 0; k < r1_[i].size(); ++k)
      if (r.coords[k].sign < 0 && (r1_[i][k] % 2 != 0)) sgn = -sgn;
    if (sgn == 1) {
      // reflection s_alpha as a W0 element: find the root index
      Vec a = r1_[i];
      int ri = d.root_index(a);
      if (ri < 0) {
        Vec half = a;
        for (auto& cc : half) cc /= 2;
        ri = d.root_index(half);
      }
      if (ri < 0) throw std::logic_error("cster_check: root not found");
      IntMat m = mat_identity(d.rank);
      for (int rr = 0; rr < d.rank; ++rr)
        for (int cc = 0; cc < d.rank; ++cc)
          m[rr][cc] -= d.roots[ri][rr] * d.coroots[ri][cc];
      gens.push_back(w.find_matrix(m));
    }
  }
  // orbit of r under the reflection subgroup
  std::set<int> subgroup = {0};
  bool grew = true;
  while (grew) {
    grew = false;
    std::set<int> next = subgroup;
    for (int u : subgroup)
      for (int g : gens) {
        if (next.insert(w.mul0(u, g)).second) grew = true;
        if (next.insert(w.mul0(g, u)).second) grew = true;
      }
    subgroup = next;
  }
  for (int u : subgroup)
    if (exact_act(w, u, r) == rstar) return true;
  return false;
}

double CFunction::plancherel_prefactor(const std::vector<int>& P, double q) const {
  const WeylGroup& w = alg_->weyl();
  auto wp = w.parabolic_elements(P);
  int w_p = 0;
  for (int u : wp)
    if (w.length0(u) > w.length0(w_p)) w_p = u;
  int wP = w.mul0(w.w0_index(), w_p);  // w^P
  Laurent qh = alg_->labels().q_half(w.from_finite(wP));
  double qwP = qh.eval(std::sqrt(q));
  qwP *= qwP;
  // |W_P / K_P| = #{w in W0 : w(P) subset F0}
  const RootDatum& d = alg_->datum();
  int count = 0;
  for (int u = 0; u < w.order(); ++u) {
    bool ok = true;
    for (int p : P) {
      Vec img = w.act_x(u, d.simple_root(p));
      bool is_simple = false;
      for (int i = 0; i < d.num_simple(); ++i)
        if (d.simple_root(i) == img) is_simple = true;
      if (!is_simple) ok = false;
    }
    if (ok) ++count;
  }
  return 1.0 / (qwP * (double)count);
}

double CFunction::plancherel_density(const std::vector<int>& P,
                                     const std::vector<std::complex<double>>& t,
                                     double q, double delta_mass) const {
  std::vector<int> S = complement_set(P);
  std::complex<double> c;
  try {
    c = c_product(t, S, q);
  } catch (const PoleAtPoint&) {
    throw;  // genuine singular evaluation
  }
  double abs2 = std::norm(c);
  if (!std::isfinite(abs2)) throw PoleAtPoint("plancherel_density: |c| not finite");
  if (abs2 == 0.0) return 0.0;  // density vanishes where 1/|c|^2 does
  return plancherel_prefactor(P, q) * delta_mass / abs2;
}

}  // namespace hecke
