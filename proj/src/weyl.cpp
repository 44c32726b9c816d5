#include "hecke/weyl.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "hecke/errors.hpp"

namespace hecke {

WeylGroup::WeylGroup(const RootDatum& d) : datum_(&d) {
  enumerate_w0();
  build_affine_simples();
  build_omega();
}

void WeylGroup::enumerate_w0() {
  int n = datum_->rank;
  IntMat id = mat_identity(n);
  std::vector<IntMat> gens;
  for (int i = 0; i < datum_->num_simple(); ++i) {
    const Vec& a = datum_->simple_root(i);
    const Vec& av = datum_->simple_coroot(i);
    IntMat m = id;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m[r][c] -= a[r] * av[c];  // x - <x,av> a, columnwise
    // column c of m is s(e_c): e_c - <e_c, av> a = e_c - av[c] * a
    gens.push_back(m);
  }
  xmat_ = {id};
  index_[id] = 0;
  words0_ = {{}};
  std::deque<int> queue = {0};
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int i = 0; i < (int)gens.size(); ++i) {
      IntMat w = mat_mul(xmat_[u], gens[i]);  // u * s_i acting on column vectors
      auto it = index_.find(w);
      if (it == index_.end()) {
        int idx = (int)xmat_.size();
        index_[w] = idx;
        xmat_.push_back(w);
        auto word = words0_[u];
        word.push_back(i);
        words0_.push_back(word);
        queue.push_back(idx);
      }
    }
    if (xmat_.size() > 100000) throw Unsupported("W0 appears infinite; bad datum");
  }
  int sz = (int)xmat_.size();
  // contragredient action on Y: <u^{-1} x, yv> = <x, u yv>, so the Y-matrix of
  // u is the transpose of the X-matrix of u^{-1}; fill after inverses.
  mult_.assign(sz, std::vector<int>(sz));
  for (int a = 0; a < sz; ++a)
    for (int b = 0; b < sz; ++b) mult_[a][b] = index_.at(mat_mul(xmat_[a], xmat_[b]));
  inv_.assign(sz, 0);
  for (int a = 0; a < sz; ++a)
    for (int b = 0; b < sz; ++b)
      if (mult_[a][b] == 0) inv_[a] = b;
  ymat_.resize(sz);
  for (int a = 0; a < sz; ++a) ymat_[a] = mat_transpose(xmat_[inv_[a]]);
  s0_.clear();
  for (auto& g : gens) s0_.push_back(index_.at(g));
  len0_.assign(sz, 0);
  for (int a = 0; a < sz; ++a) {
    int inversions = 0;
    for (int i : datum_->positive)
      if (!datum_->is_positive_root_vec(act_x(a, datum_->roots[i]))) ++inversions;
    len0_[a] = inversions;
  }
  longest_ = (int)(std::max_element(len0_.begin(), len0_.end()) - len0_.begin());
}

int WeylGroup::find_matrix(const IntMat& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) throw std::domain_error("matrix not in W0");
  return it->second;
}

WElt WeylGroup::mul(const WElt& a, const WElt& b) const {
  return WElt{add(a.x, act_x(a.u, b.x)), mul0(a.u, b.u)};
}

WElt WeylGroup::inverse(const WElt& a) const {
  int ui = inv0(a.u);
  return WElt{neg(act_x(ui, a.x)), ui};
}

AffineRoot WeylGroup::act_aff(const WElt& w, const AffineRoot& a) const {
  // t_x u . (alpha v, n) = (u alpha v, n - <x, u alpha v>)
  Vec cv = act_y(w.u, a.coroot);
  return AffineRoot{cv, a.level - dot(w.x, cv)};
}

bool WeylGroup::aff_positive(const AffineRoot& a) const {
  if (a.level != 0) return a.level > 0;
  // level zero: positivity of the underlying root
  for (size_t i = 0; i < datum_->coroots.size(); ++i)
    if (datum_->coroots[i] == a.coroot)
      return datum_->is_positive_root_vec(datum_->roots[i]);
  throw std::domain_error("affine root with unknown coroot");
}

Int WeylGroup::length(const WElt& w) const {
  // For each beta in R0 count the interval of levels n with (beta v, n) > 0
  // and w(beta v, n) < 0; closed form from c = <x, u beta v> and sign of
  // u(beta).  Avoids enumerating R^aff.
  Int total = 0;
  const auto& roots = datum_->roots;
  for (size_t i = 0; i < roots.size(); ++i) {
    const Vec& betav = datum_->coroots[i];
    bool beta_pos = datum_->is_positive_root_vec(roots[i]);
    Vec ubv = act_y(w.u, betav);
    Int c = dot(w.x, ubv);
    Vec ub = act_x(w.u, roots[i]);
    bool image_pos = datum_->is_positive_root_vec(ub);
    Int n0 = beta_pos ? 0 : 1;
    if (c > n0) total += c - n0;
    if (c >= n0 && !image_pos) total += 1;
  }
  return total;
}

Rational WeylGroup::norm(const WElt& w) const {
  Rational nrm(length(w));
  const auto& zx = datum_->zx_basis;
  if (zx.empty()) return nrm;
  // project w(0) = x onto Q (x) Z_X along Q (x) Q(R0)
  std::vector<Vec> basis;
  for (int i = 0; i < datum_->num_simple(); ++i) basis.push_back(datum_->simple_root(i));
  size_t nsimple = basis.size();
  for (auto& z : zx) basis.push_back(z);
  IntMat m(datum_->rank, Vec(basis.size()));
  if (basis.size() != (size_t)datum_->rank)
    throw std::domain_error("norm: Q + Z_X does not span X");
  for (int r = 0; r < datum_->rank; ++r)
    for (size_t cidx = 0; cidx < basis.size(); ++cidx) m[r][cidx] = basis[cidx][r];
  std::vector<Rational> rhs(datum_->rank);
  for (int r = 0; r < datum_->rank; ++r) rhs[r] = Rational(w.x[r]);
  auto sol = solve_rational(m, rhs);
  for (size_t j = nsimple; j < sol.size(); ++j) nrm += sol[j].abs();
  return nrm;
}

void WeylGroup::build_affine_simples() {
  int nsimple = datum_->num_simple();
  aff_simple_.clear();
  aff_refl_.clear();
  aff_finite_idx_.clear();

  // components of the Dynkin diagram
  std::vector<int> comp(nsimple, -1);
  int ncomp = 0;
  for (int i = 0; i < nsimple; ++i) {
    if (comp[i] >= 0) continue;
    std::deque<int> q = {i};
    comp[i] = ncomp;
    while (!q.empty()) {
      int a = q.front();
      q.pop_front();
      for (int b = 0; b < nsimple; ++b)
        if (comp[b] < 0 && datum_->cartan[a][b] != 0) {
          comp[b] = ncomp;
          q.push_back(b);
        }
    }
    ++ncomp;
  }

  // extra affine node(s): (-theta v, 1) per component, theta v the highest
  // coroot of that component (maximal height in the simple-coroot basis)
  std::vector<AffineRoot> extras;
  std::vector<int> extra_fidx;
  for (int c = 0; c < ncomp; ++c) {
    std::vector<Vec> scor;
    std::vector<int> members;
    for (int i = 0; i < nsimple; ++i)
      if (comp[i] == c) {
        scor.push_back(datum_->simple_coroot(i));
        members.push_back(i);
      }
    int best = -1;
    Rational best_h(0);
    for (int i = 0; i < datum_->num_roots(); ++i) {
      const Vec& cv = datum_->coroots[i];
      // must lie in this component (orthogonal to the others) and be dominant
      bool in_comp = true;
      for (int j = 0; j < nsimple; ++j)
        if (comp[j] != c && dot(datum_->simple_root(j), cv) != 0) in_comp = false;
      for (int j = 0; j < nsimple; ++j)
        if (comp[j] == c && dot(datum_->simple_root(j), cv) < 0) in_comp = false;
      if (!in_comp) continue;
      // height via rho of the component: sum over positive roots is overkill,
      // use pairing with the sum of fundamental-ish weights: here simply the
      // sum of coefficients obtained by solving in the simple-coroot basis.
      Rational h(0);
      {
        // solve cv = sum t_k scor_k over Q (consistent by construction)
        size_t m = scor.size();
        IntMat a(datum_->rank, Vec(m));
        for (int r = 0; r < datum_->rank; ++r)
          for (size_t k = 0; k < m; ++k) a[r][k] = scor[k][r];
        // least-norm solve via normal equations in exact arithmetic:
        IntMat at = mat_transpose(a);
        IntMat ata = mat_mul(at, a);
        std::vector<Rational> rhs(m);
        for (size_t k = 0; k < m; ++k) rhs[k] = Rational(dot(scor[k], cv));
        std::vector<Rational> t;
        try {
          t = solve_rational(ata, rhs);
        } catch (const std::domain_error&) {
          continue;
        }
        for (auto& q : t) h += q;
      }
      if (best < 0 || best_h < h) {
        best = i;
        best_h = h;
      }
    }
    if (best < 0) throw std::domain_error("no highest coroot found");
    extras.push_back(AffineRoot{neg(datum_->coroots[best]), 1});
    extra_fidx.push_back(-1);
  }

  // naming: position 0 = first extra node "s0"; 1..n = finite simples;
  // further extras (reducible systems) appended after.
  if (!extras.empty()) {
    aff_simple_.push_back(extras[0]);
    aff_finite_idx_.push_back(-1);
  }
  for (int i = 0; i < nsimple; ++i) {
    aff_simple_.push_back(AffineRoot{datum_->simple_coroot(i), 0});
    aff_finite_idx_.push_back(datum_->simple[i]);
  }
  for (size_t e = 1; e < extras.size(); ++e) {
    aff_simple_.push_back(extras[e]);
    aff_finite_idx_.push_back(-1);
  }

  for (size_t i = 0; i < aff_simple_.size(); ++i) {
    const AffineRoot& a = aff_simple_[i];
    // locate the root beta with the given coroot
    int ri = -1;
    for (int j = 0; j < datum_->num_roots(); ++j)
      if (datum_->coroots[j] == a.coroot) ri = j;
    if (ri < 0) throw std::domain_error("affine simple with unknown coroot");
    const Vec& beta = datum_->roots[ri];
    IntMat srefl = mat_identity(datum_->rank);
    for (int r = 0; r < datum_->rank; ++r)
      for (int cc = 0; cc < datum_->rank; ++cc) srefl[r][cc] -= beta[r] * a.coroot[cc];
    WElt refl{scale(-a.level, beta), find_matrix(srefl)};
    aff_refl_.push_back(refl);
    if (length(refl) != 1)
      throw std::domain_error("affine simple reflection has length != 1");
  }
}

void WeylGroup::build_omega() {
  omega_f_gens_.clear();
  pi_powers_.clear();
  // Omega_f = Omega / Z_X = X / (Q + Z_X): cokernel of the matrix whose
  // columns are the simple roots together with a basis of Z_X.
  int n = datum_->rank;
  int m = datum_->num_simple();
  std::vector<Vec> cols;
  for (int i = 0; i < m; ++i) cols.push_back(datum_->simple_root(i));
  for (auto& z : datum_->zx_basis) cols.push_back(z);
  if (cols.empty()) {
    pi_powers_ = {identity()};
    return;
  }
  IntMat a(n, Vec(cols.size()));
  for (int r = 0; r < n; ++r)
    for (size_t c = 0; c < cols.size(); ++c) a[r][c] = cols[c][r];
  SmithForm f = smith_form(a);
  std::vector<std::pair<Vec, Int>> torsion;  // (coset lift, order)
  {
    size_t nn = f.u.size();
    IntMat uinv(nn, Vec(nn));
    for (size_t j = 0; j < nn; ++j) {
      std::vector<Rational> e(nn, Rational(0));
      e[j] = Rational(1);
      auto col = solve_rational(f.u, e);
      for (size_t i = 0; i < nn; ++i) uinv[i][j] = col[i].num();
    }
    for (size_t i = 0; i < f.diag.size(); ++i)
      if (f.diag[i] > 1) {
        Vec lift(n);
        for (int r = 0; r < n; ++r) lift[r] = uinv[r][i];
        torsion.push_back({lift, f.diag[i]});
      }
  }
  // lift each torsion generator to the length-zero element in its coset,
  // preferring dominant translation parts (needed for Bernstein forms)
  for (auto& tg : torsion) {
    const Vec& x0 = tg.first;
    WElt best{Vec(), -1};
    for (int radius = 1; radius <= 3 && best.u < 0; ++radius) {
      std::vector<Int> cur(cols.size(), -radius);
      while (true) {
        Vec x = x0;
        for (size_t i = 0; i < cols.size(); ++i) x = add(x, scale(cur[i], cols[i]));
        for (int u = 0; u < (int)xmat_.size(); ++u) {
          WElt w{x, u};
          if (!is_identity(w) && length(w) == 0 && datum_->is_dominant(x)) {
            best = w;
            break;
          }
        }
        if (best.u >= 0) break;
        size_t k = 0;
        while (k < cols.size() && cur[k] == radius) cur[k++] = -radius;
        if (k == cols.size()) break;
        ++cur[k];
      }
    }
    if (best.u < 0) throw std::domain_error("failed to lift Omega generator");
    omega_f_gens_.push_back(best);
  }
  // canonical pi powers for a cyclic finite quotient
  if (torsion.size() == 1) {
    WElt pi = omega_f_gens_[0];
    pi_powers_ = {identity()};
    WElt p = pi;
    while (true) {
      // reduce the central part away: powers are taken modulo Z_X
      WElt q = p;
      bool is_central_transl = (q.u == 0);
      if (is_central_transl) {
        for (auto& cv : datum_->coroots)
          if (dot(q.x, cv) != 0) is_central_transl = false;
      }
      if (is_central_transl) break;
      pi_powers_.push_back(p);
      p = mul(p, pi);
      if ((Int)pi_powers_.size() > torsion[0].second + 1)
        throw std::domain_error("pi has unexpected order");
    }
  } else if (torsion.empty()) {
    pi_powers_ = {identity()};
  }
}

ReducedWord WeylGroup::reduced_word(const WElt& w) const {
  ReducedWord rw;
  WElt cur = w;
  Int len = length(cur);
  std::vector<int> rev;
  while (len > 0) {
    int pick = -1;
    for (int i = 0; i < num_aff_simple(); ++i) {
      if (!aff_positive(act_aff(cur, aff_simple_[i]))) {
        pick = i;
        break;  // lowest simple-index descent first
      }
    }
    if (pick < 0) throw std::logic_error("no descent found at positive length");
    cur = mul(cur, aff_refl_[pick]);
    rev.push_back(pick);
    --len;
  }
  rw.omega = cur;
  rw.word.assign(rev.rbegin(), rev.rend());
  return rw;
}

WElt WeylGroup::from_word(const ReducedWord& rw) const {
  WElt w = rw.omega;
  for (int i : rw.word) w = mul(w, aff_refl_[i]);
  return w;
}

std::vector<int> WeylGroup::parabolic_elements(const std::vector<int>& P) const {
  std::set<int> got = {0};
  std::deque<int> q = {0};
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int p : P) {
      int v = mul0(u, simple_refl(p));
      if (got.insert(v).second) q.push_back(v);
    }
  }
  return std::vector<int>(got.begin(), got.end());
}

std::vector<int> WeylGroup::coset_reps(const std::vector<int>& P) const {
  auto wp = parabolic_elements(P);
  std::set<int> wpset(wp.begin(), wp.end());
  std::vector<int> reps;
  std::set<int> seen;
  for (int u = 0; u < order(); ++u) {
    if (seen.count(u)) continue;
    // collect the coset u W_P and keep its unique minimal-length element
    int best = u;
    std::vector<int> coset;
    for (int p : wpset) {
      int v = mul0(u, p);
      coset.push_back(v);
      if (length0(v) < length0(best)) best = v;
    }
    for (int v : coset) seen.insert(v);
    reps.push_back(best);
  }
  std::sort(reps.begin(), reps.end(), [&](int a, int b) {
    if (length0(a) != length0(b)) return length0(a) < length0(b);
    return word0(a) < word0(b);
  });
  return reps;
}

std::vector<DoubleCoset> WeylGroup::double_cosets(const std::vector<int>& Q,
                                                  const std::vector<int>& P) const {
  auto wq = parabolic_elements(Q);
  auto wp = parabolic_elements(P);
  std::vector<DoubleCoset> out;
  std::set<int> seen;
  for (int w = 0; w < order(); ++w) {
    if (seen.count(w)) continue;
    int best = w;
    std::set<int> coset;
    for (int a : wq)
      for (int b : wp) {
        int v = mul0(mul0(a, w), b);
        coset.insert(v);
        if (length0(v) < length0(best)) best = v;
      }
    for (int v : coset) seen.insert(v);
    DoubleCoset dc;
    dc.d = best;
    for (int qpos : Q) {
      // q in Q cap d(P): alpha_q = d(alpha_p) for some p in P
      const Vec& aq = datum_->simple_root(qpos);
      for (int ppos : P)
        if (act_x(best, datum_->simple_root(ppos)) == aq) dc.meet.push_back(qpos);
    }
    out.push_back(dc);
  }
  std::sort(out.begin(), out.end(), [&](const DoubleCoset& a, const DoubleCoset& b) {
    if (length0(a.d) != length0(b.d)) return length0(a.d) < length0(b.d);
    return word0(a.d) < word0(b.d);
  });
  return out;
}

WeylGroup::Howlett WeylGroup::howlett_decompose(int w, const std::vector<int>& Q,
                                                const std::vector<int>& P) const {
  auto wq = parabolic_elements(Q);
  auto wp = parabolic_elements(P);
  int d = w;
  for (int a : wq)
    for (int b : wp) {
      int v = mul0(mul0(a, w), b);
      if (length0(v) < length0(d)) d = v;
    }
  std::vector<int> meet;
  for (int qpos : Q) {
    const Vec& aq = datum_->simple_root(qpos);
    for (int ppos : P)
      if (act_x(d, datum_->simple_root(ppos)) == aq) meet.push_back(qpos);
  }
  auto wl = parabolic_elements(meet);
  std::set<int> wlset(wl.begin(), wl.end());
  std::set<int> wqset(wq.begin(), wq.end());
  Howlett result{-1, d, -1, meet};
  int count = 0;
  for (int v : wp) {
    int u = mul0(mul0(w, inv0(v)), inv0(d));
    if (!wqset.count(u)) continue;
    // u must be minimal in u W_L: u(alpha_l) > 0 for l in L
    bool minimal = true;
    for (int l : meet)
      if (!datum_->is_positive_root_vec(act_x(u, datum_->simple_root(l)))) minimal = false;
    if (!minimal) continue;
    if (mul0(mul0(u, d), v) != w) continue;
    result.u = u;
    result.v = v;
    ++count;
  }
  if (count != 1) throw std::logic_error("Howlett decomposition not unique");
  return result;
}

std::vector<WElt> WeylGroup::norm_ball(const Rational& bound) const {
  std::map<WElt, Rational> seen;
  std::deque<WElt> queue;
  WElt e = identity();
  seen[e] = Rational(0);
  queue.push_back(e);
  std::vector<WElt> gens;
  for (auto& r : aff_refl_) gens.push_back(r);
  for (auto& g : omega_f_gens_) {
    gens.push_back(g);
    gens.push_back(inverse(g));
  }
  for (auto& z : datum_->zx_basis) {
    gens.push_back(translation(z));
    gens.push_back(translation(neg(z)));
  }
  while (!queue.empty()) {
    WElt w = queue.front();
    queue.pop_front();
    for (auto& g : gens) {
      WElt v = mul(w, g);
      if (seen.count(v)) continue;
      Rational nv = norm(v);
      if (bound < nv) continue;
      seen[v] = nv;
      queue.push_back(v);
    }
  }
  std::vector<WElt> ball;
  for (auto& [w, nrm] : seen) ball.push_back(w);
  return ball;
}

std::string WeylGroup::word_string(const WElt& w) const {
  ReducedWord rw = reduced_word(w);
  std::ostringstream os;
  bool have_prefix = false;
  if (!is_identity(rw.omega)) {
    // match against pi powers, else raw normal form
    int k = -1;
    for (size_t i = 1; i < pi_powers_.size(); ++i)
      if (pi_powers_[i] == rw.omega) k = (int)i;
    if (k >= 1) {
      os << "pi";
      if (k > 1) os << "^" << k;
    } else {
      os << "t[";
      for (int i = 0; i < datum_->rank; ++i) os << (i ? "," : "") << rw.omega.x[i];
      os << "]";
      if (rw.omega.u != 0) {
        for (int s : word0(rw.omega.u)) os << " s" << (s + 1);
      }
    }
    have_prefix = true;
  }
  if (rw.word.empty() && !have_prefix) return "e";
  if (!rw.word.empty()) {
    if (have_prefix) os << " . ";
    for (size_t i = 0; i < rw.word.size(); ++i) os << (i ? " " : "") << "s" << rw.word[i];
  }
  return os.str();
}

WElt WeylGroup::parse_word(const std::string& text) const {
  WElt w = identity();
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    if (tok == "." || tok == "*") continue;
    if (tok == "e") continue;
    if (tok.rfind("pi", 0) == 0) {
      int k = 1;
      auto caret = tok.find('^');
      if (caret != std::string::npos) k = std::stoi(tok.substr(caret + 1));
      if (pi_powers_.size() <= 1) throw ValidationError("datum has no pi generator");
      int m = (int)pi_powers_.size();
      k = ((k % m) + m) % m;
      w = mul(w, pi_powers_[k]);
    } else if (tok[0] == 't' && tok.size() > 1 && tok[1] == '[') {
      Vec x;
      std::string body = tok.substr(2, tok.size() - 3);
      std::istringstream bs(body);
      std::string num;
      while (std::getline(bs, num, ',')) x.push_back(std::stoll(num));
      if ((int)x.size() != datum_->rank) throw ValidationError("bad translation in word");
      w = mul(w, translation(x));
    } else if (tok[0] == 's') {
      int i = std::stoi(tok.substr(1));
      if (i < 0 || i >= num_aff_simple()) throw ValidationError("bad generator " + tok);
      w = mul(w, aff_refl_[i]);
    } else {
      throw ValidationError("cannot parse word token '" + tok + "'");
    }
  }
  return w;
}

}  // namespace hecke
