#include "hecke/repmod.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hecke/errors.hpp"

namespace hecke {

FinRep::FinRep(const Algebra& alg, double q, std::vector<CMat> nsimple,
               std::vector<CMat> theta)
    : alg_(&alg), q_(q), nsimple_(std::move(nsimple)), theta_(std::move(theta)) {
  dim_ = 1;
  if (!nsimple_.empty()) dim_ = (int)nsimple_[0].rows();
  else if (!theta_.empty()) dim_ = (int)theta_[0].rows();
  for (auto& m : nsimple_) nsimple_inv_.push_back(m.inverse());
  for (auto& m : theta_) theta_inv_.push_back(m.inverse());
}

CMat FinRep::act_theta(const Vec& x) const {
  auto it = theta_cache_.find(x);
  if (it != theta_cache_.end()) return it->second;
  CMat m = CMat::Identity(dim_, dim_);
  for (size_t j = 0; j < x.size(); ++j) {
    Int k = x[j];
    const CMat& gen = k >= 0 ? theta_[j] : theta_inv_[j];
    for (Int r = 0; r < (k >= 0 ? k : -k); ++r) m = m * gen;
  }
  theta_cache_[x] = m;
  return m;
}

CMat FinRep::act_finite(int u) const {
  auto it = finite_cache_.find(u);
  if (it != finite_cache_.end()) return it->second;
  CMat m = CMat::Identity(dim_, dim_);
  for (int i : alg_->weyl().word0(u)) m = m * nsimple_[i];
  finite_cache_[u] = m;
  return m;
}

CMat FinRep::act(const BForm& left) const {
  CMat out = CMat::Zero(dim_, dim_);
  double v = vnum();
  for (auto& [u, au] : left.a) {
    CMat acoef = CMat::Zero(dim_, dim_);
    for (auto& [x, c] : au) acoef += c.eval(v) * act_theta(x);
    out += acoef * act_finite(u);
  }
  return out;
}

CMat FinRep::act(const NElt& h) const { return act(alg_->bernstein_left(h)); }

double FinRep::relation_residual() const {
  const RootDatum& d = alg_->datum();
  const WeylGroup& w = alg_->weyl();
  double v = vnum();
  double worst = 0;
  auto upd = [&](const CMat& m) { worst = std::max(worst, m.norm()); };
  for (int i = 0; i < d.num_simple(); ++i) {
    int f = alg_->labels().f_aff(d.simple_coroot(i), 1);
    double qs = std::pow(v, f);
    const CMat& m = nsimple_[i];
    upd((m + std::pow(v, -f) * CMat::Identity(dim_, dim_)) *
        (m - qs * CMat::Identity(dim_, dim_)));
  }
  // braid relations
  for (int i = 0; i < d.num_simple(); ++i)
    for (int j = i + 1; j < d.num_simple(); ++j) {
      int si = w.simple_refl(i), sj = w.simple_refl(j);
      int prod = w.mul0(si, sj);
      int m = 1, cur = prod;
      while (cur != 0 && m < 64) {
        cur = w.mul0(cur, prod);
        ++m;
      }
      CMat a = CMat::Identity(dim_, dim_), b = a;
      for (int k = 0; k < m; ++k) {
        a = a * ((k % 2 == 0) ? nsimple_[i] : nsimple_[j]);
        b = b * ((k % 2 == 0) ? nsimple_[j] : nsimple_[i]);
      }
      upd(a - b);
    }
  // theta commutation and invertibility
  for (size_t i = 0; i < theta_.size(); ++i) {
    for (size_t j = i + 1; j < theta_.size(); ++j)
      upd(theta_[i] * theta_[j] - theta_[j] * theta_[i]);
    upd(theta_[i] * theta_inv_[i] - CMat::Identity(dim_, dim_));
  }
  // cross relation on the lattice basis
  for (int i = 0; i < d.num_simple(); ++i) {
    for (int jj = 0; jj < d.rank; ++jj) {
      Vec e(d.rank, 0);
      e[jj] = 1;
      Vec se = w.act_x(w.simple_refl(i), e);
      CMat lhs = act_theta(e) * nsimple_[i] - nsimple_[i] * act_theta(se);
      BForm rhs = alg_->cross_relation_rhs(i, e);
      upd(lhs - act(rhs));
    }
  }
  return worst;
}

double FinRep::star_residual() const {
  // pi(h)^dagger = pi(h^*) on N_s (self-adjoint) and theta generators
  double worst = 0;
  for (auto& m : nsimple_) worst = std::max(worst, (m.adjoint() - m).norm());
  const RootDatum& d = alg_->datum();
  for (int j = 0; j < d.rank; ++j) {
    Vec e(d.rank, 0);
    e[j] = 1;
    NElt th_star = alg_->star(alg_->theta(e));
    worst = std::max(worst, (act_theta(e).adjoint() - act(th_star)).norm());
  }
  return worst;
}

FinRep steinberg(const Algebra& alg, double q) {
  if (!alg.datum().is_semisimple())
    throw ValidationError("steinberg: datum must be semisimple");
  const RootDatum& d = alg.datum();
  double v = std::sqrt(q);
  auto chi = [&](const NElt& h) {
    Cplx val = 0;
    for (auto& [w, c] : h.c) {
      Laurent qh = alg.labels().q_half(w);
      int e = qh.is_zero() ? 0 : qh.min_degree();
      Int len = alg.weyl().length(w);
      val += c.eval(v) * ((len % 2 == 0) ? 1.0 : -1.0) * std::pow(v, -e);
    }
    return val;
  };
  std::vector<CMat> ns, th;
  for (int i = 0; i < d.num_simple(); ++i) {
    CMat m(1, 1);
    m(0, 0) = chi(alg.basis_finite(alg.weyl().simple_refl(i)));
    ns.push_back(m);
  }
  for (int j = 0; j < d.rank; ++j) {
    Vec e(d.rank, 0);
    e[j] = 1;
    CMat m(1, 1);
    m(0, 0) = chi(alg.theta(e));
    th.push_back(m);
  }
  FinRep rep(alg, q, ns, th);
  if (rep.relation_residual() > 1e-10)
    throw NumericError("steinberg: defining relations fail");
  return rep;
}

std::vector<Cplx> steinberg_weight(const Algebra& alg, double q) {
  FinRep st = steinberg(alg, q);
  std::vector<Cplx> w;
  for (int j = 0; j < alg.datum().rank; ++j) w.push_back(st.theta_gen(j)(0, 0));
  return w;
}

// ---------------- induced representations ----------------

InducedRep::InducedRep(const Parabolic& par, const FinRep& delta,
                       const std::vector<Cplx>& tP, double q)
    : par_(&par), delta_(&delta), tP_(tP), q_(q) {
  wp_ = par.coset_reps();
  dim_ = (int)wp_.size() * delta.dim();
  if ((int)tP.size() != par.tP_dim())
    throw ValidationError("induce: t^P has wrong dimension");
}

CMat InducedRep::delta_of_part(const BForm& right_sub) const {
  const Algebra& alg = par_->parent();
  const WeylGroup& w = alg.weyl();
  int dd = delta_->dim();
  CMat out = CMat::Zero(dd, dd);
  double v = std::sqrt(q_);
  bool quot_trivial = par_->quotient().datum().rank == 0;
  for (auto& [u, au] : right_sub.a) {
    // map u (in W_P) to the quotient group through the P-word
    int uq = 0;
    if (!quot_trivial) {
      for (int letter : w.word0(u)) {
        int pos = -1;
        for (size_t k = 0; k < par_->P().size(); ++k)
          if (par_->P()[k] == letter) pos = (int)k;
        if (pos < 0) throw std::logic_error("delta_of_part: word leaves W_P");
        uq = par_->quotient().weyl().mul0(uq, par_->quotient().weyl().simple_refl(pos));
      }
    } else if (u != 0) {
      throw std::logic_error("delta_of_part: finite part in trivial quotient");
    }
    CMat nu = delta_->act_finite(uq);
    CMat acoef = CMat::Zero(dd, dd);
    for (auto& [x, c] : au) {
      Cplx tw = par_->tP_value(x, tP_);
      Vec xb = quot_trivial ? Vec{} : mat_apply(par_->qdata().proj_xp, x);
      acoef += c.eval(v) * tw * delta_->act_theta(xb);
    }
    out += nu * acoef;
  }
  return out;
}

CMat InducedRep::act(const NElt& h) const {
  int dd = delta_->dim();
  CMat out = CMat::Zero(dim_, dim_);
  for (size_t w = 0; w < wp_.size(); ++w) {
    const InductionSplit& sp = par_->induction_split(h, (int)w);
    for (auto& [wp_idx, part] : sp.parts)
      out.block(wp_idx * dd, w * dd, dd, dd) = delta_of_part(part);
  }
  return out;
}

CMat InducedRep::act_theta(const Vec& x) const {
  auto it = theta_mat_cache_.find(x);
  if (it != theta_mat_cache_.end()) return it->second;
  CMat m = act(par_->parent().theta(x));
  theta_mat_cache_[x] = m;
  return m;
}

CMat InducedRep::act_finite_simple(int simple_pos) const {
  return act(par_->parent().basis_finite(par_->parent().weyl().simple_refl(simple_pos)));
}

FinRep InducedRep::to_finrep() const {
  std::vector<CMat> ns, th;
  const RootDatum& d = par_->parent().datum();
  for (int i = 0; i < d.num_simple(); ++i) ns.push_back(act_finite_simple(i));
  for (int j = 0; j < d.rank; ++j) {
    Vec e(d.rank, 0);
    e[j] = 1;
    th.push_back(act_theta(e));
  }
  return FinRep(par_->parent(), q_, ns, th);
}

std::vector<InducedRep::PredictedWeight> InducedRep::predicted_weights() const {
  const RootDatum& d = par_->parent().datum();
  const WeylGroup& w = par_->parent().weyl();
  // delta weights on the X_P basis
  std::vector<std::vector<Cplx>> dweights;
  if (par_->quotient().datum().rank == 0) {
    dweights.push_back({});
  } else {
    WeightDatum wd = weights(*delta_);
    for (auto& s : wd.spaces)
      for (int m = 0; m < s.multiplicity; ++m) dweights.push_back(s.value);
    // keep distinct values only
    std::sort(dweights.begin(), dweights.end(),
              [](const std::vector<Cplx>& a, const std::vector<Cplx>& b) {
                for (size_t i = 0; i < a.size(); ++i) {
                  if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
                  if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
                }
                return false;
              });
    dweights.erase(std::unique(dweights.begin(), dweights.end(),
                               [](const std::vector<Cplx>& a, const std::vector<Cplx>& b) {
                                 double dd = 0;
                                 for (size_t i = 0; i < a.size(); ++i)
                                   dd += std::abs(a[i] - b[i]);
                                 return dd < 1e-9;
                               }),
                   dweights.end());
  }
  std::vector<PredictedWeight> out;
  for (int wi : wp_) {
    for (auto& dw : dweights) {
      // t'(x) = x(t^P) * dw(xbar); induced weight value on e_i is (w^{-1}e_i)(t')
      PredictedWeight pw;
      pw.w = wi;
      const IntMat& minv = w.xmatrix(w.inv0(wi));
      for (int i = 0; i < d.rank; ++i) {
        Vec col(d.rank);
        for (int r = 0; r < d.rank; ++r) col[r] = minv[r][i];
        Cplx val = par_->tP_value(col, tP_);
        if (!dw.empty()) {
          Vec xb = mat_apply(par_->qdata().proj_xp, col);
          Cplx dval = 1.0;
          for (size_t j = 0; j < xb.size(); ++j) dval *= std::pow(dw[j], (double)xb[j]);
          val *= dval;
        }
        pw.value.push_back(val);
      }
      out.push_back(pw);
    }
  }
  return out;
}

// ---------------- weights and Casselman criteria ----------------

WeightDatum weights(const FinRep& rep, double cluster_tol, unsigned seed) {
  WeightDatum wd;
  int n = rep.algebra().datum().rank;
  if (n == 0 || rep.dim() == 0) {
    WeightSpace ws;
    ws.multiplicity = rep.dim() == 0 ? 0 : rep.dim();
    ws.projector = CMat::Identity(rep.dim(), rep.dim());
    wd.spaces.push_back(ws);
    wd.residual = 0;
    return wd;
  }
  std::vector<CMat> fam;
  for (int j = 0; j < n; ++j) fam.push_back(rep.theta_gen(j));
  auto clusters = joint_eigenspaces(fam, cluster_tol, seed);
  double res = 0;
  CMat sum = CMat::Zero(rep.dim(), rep.dim());
  int multsum = 0;
  for (auto& cl : clusters) {
    WeightSpace ws;
    ws.value = cl.values;
    ws.multiplicity = cl.multiplicity;
    ws.projector = cl.projector;
    res = std::max(res, (cl.projector * cl.projector - cl.projector).norm());
    sum += cl.projector;
    multsum += cl.multiplicity;
    wd.spaces.push_back(ws);
  }
  res = std::max(res, (sum - CMat::Identity(rep.dim(), rep.dim())).norm());
  if (multsum != rep.dim()) throw NumericError("weights: multiplicities do not sum to dim");
  for (size_t i = 0; i < wd.spaces.size(); ++i)
    for (size_t j = i + 1; j < wd.spaces.size(); ++j)
      res = std::max(res, (wd.spaces[i].projector * wd.spaces[j].projector).norm());
  wd.residual = res;
  if (res > 1e-6) throw NumericError("weights: projector reconstruction residual too large");
  return wd;
}

std::vector<Vec> cone_generators(const RootDatum& d, const std::vector<int>& P, int box) {
  std::vector<Vec> pts;
  Vec cur(d.rank, -box);
  while (true) {
    bool in_cone = true;
    for (int p : P)
      if (dot(cur, d.simple_coroot(p)) < 0) in_cone = false;
    if (in_cone && !is_zero(cur)) pts.push_back(cur);
    int k = 0;
    while (k < d.rank && cur[k] == box) cur[k++] = -box;
    if (k == d.rank) break;
    ++cur[k];
  }
  // prune points that are sums of two other cone points
  std::set<Vec> ptset(pts.begin(), pts.end());
  std::vector<Vec> gens;
  for (auto& x : pts) {
    bool reducible = false;
    for (auto& y : pts) {
      if (is_zero(y)) continue;
      Vec z = sub(x, y);
      if (!is_zero(z) && ptset.count(z)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) gens.push_back(x);
  }
  return gens;
}

namespace {
double abs_char(const std::vector<Cplx>& value, const Vec& x) {
  double v = 1.0;
  for (size_t i = 0; i < value.size(); ++i) v *= std::pow(std::abs(value[i]), (double)x[i]);
  return v;
}
std::string vec_str(const Vec& x) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  os << ")";
  return os.str();
}
}  // namespace

CasselmanReport casselman_check(const FinRep& rep, const WeightDatum& wd) {
  const RootDatum& d = rep.algebra().datum();
  std::vector<int> all;
  for (int i = 0; i < d.num_simple(); ++i) all.push_back(i);
  auto gens = cone_generators(d, all);
  CasselmanReport rpt;
  rpt.tempered = true;
  rpt.discrete_series = d.is_semisimple();
  for (auto& s : wd.spaces) {
    if (s.value.empty()) continue;
    for (auto& g : gens) {
      double a = abs_char(s.value, g);
      if (a > 1 + 1e-9) {
        rpt.tempered = false;
        rpt.discrete_series = false;
        if (rpt.witness.empty()) {
          std::ostringstream os;
          os << "x=" << vec_str(g) << " |x(t)|=" << a;
          rpt.witness = os.str();
        }
      }
      if (a > 1 - 1e-9) rpt.discrete_series = false;
    }
  }
  return rpt;
}

bool weight_q_tempered(const RootDatum& d, const std::vector<int>& Q,
                       const std::vector<Cplx>& value, int box, double tol) {
  auto gens = cone_generators(d, Q, box);
  for (auto& g : gens)
    if (abs_char(value, g) > 1 + tol) return false;
  return true;
}

Cplx Coefficient::operator()(const NElt& h) const { return a.dot(rep->act(h) * b); }

Cplx ConstantTerm::eval(const Coefficient& f, const NElt& h) const {
  return f.a.dot(projector * (f.rep->act(h) * f.b));
}

ConstantTerm constant_term(const FinRep& rep, const WeightDatum& wd,
                           const std::vector<int>& Q, double tol) {
  const RootDatum& d = rep.algebra().datum();
  ConstantTerm ct;
  ct.projector = CMat::Zero(rep.dim(), rep.dim());
  for (auto& s : wd.spaces)
    if (weight_q_tempered(d, Q, s.value, 3, tol)) ct.projector += s.projector;
  return ct;
}

ExponentExpansion exponent_expansion(const FinRep& rep, const WeightDatum& wd) {
  ExponentExpansion ee;
  int n = rep.algebra().datum().rank;
  for (auto& s : wd.spaces) {
    ExponentExpansion::Term term;
    term.t = s.value;
    term.projector = s.projector;
    for (int j = 0; j < n; ++j) {
      // nilpotent part of theta_j / t_j on the generalized eigenspace
      CMat u = rep.theta_gen(j) * s.projector / s.value[j];
      CMat nil = u - s.projector;  // vanishes off the eigenspace image
      nil = s.projector * nil;     // restrict cleanly
      CMat lam = CMat::Zero(rep.dim(), rep.dim());
      CMat power = nil;
      for (int k = 1; k <= s.multiplicity; ++k) {
        lam += ((k % 2 == 1) ? 1.0 : -1.0) / (double)k * power;
        power = power * nil;
      }
      term.log_unip.push_back(lam);
    }
    ee.terms.push_back(term);
  }
  return ee;
}

Cplx ExponentExpansion::coefficient(const Coefficient& f, int term_i, const NElt& h,
                                    const Vec& x) const {
  const Term& t = terms[term_i];
  int dim = (int)t.projector.rows();
  CMat lam = CMat::Zero(dim, dim);
  for (size_t j = 0; j < x.size(); ++j) lam += (double)x[j] * t.log_unip[j];
  // exp of a nilpotent matrix
  CMat e = CMat::Identity(dim, dim), p = CMat::Identity(dim, dim);
  double fact = 1;
  for (int k = 1; k <= dim; ++k) {
    p = p * lam;
    fact *= k;
    e += p / fact;
  }
  return f.a.dot(t.projector * (e * (f.rep->act(h) * f.b)));
}

Cplx ExponentExpansion::reconstruct(const Coefficient& f, const NElt& h,
                                    const Vec& x) const {
  Cplx total = 0;
  for (size_t i = 0; i < terms.size(); ++i) {
    Cplx tx = 1.0;
    for (size_t j = 0; j < x.size(); ++j) tx *= std::pow(terms[i].t[j], (double)x[j]);
    total += tx * coefficient(f, (int)i, h, x);
  }
  return total;
}

// ---------------- intertwining operators ----------------

namespace {
Cplx eval_aelt(const AElt& a, const std::vector<Cplx>& t, double v) {
  Cplx val = 0;
  for (auto& [x, c] : a) {
    Cplx ch = 1.0;
    for (size_t i = 0; i < x.size(); ++i) ch *= std::pow(t[i], (double)x[i]);
    val += c.eval(v) * ch;
  }
  return val;
}
}  // namespace

CMat intertwiner_matrix_left(const InducedRep& rep, int simple_pos) {
  const Algebra& alg = rep.algebra();
  CMat n_mat = CMat::Zero(rep.dim(), rep.dim());
  {
    AElt na = alg.n_alpha(simple_pos);
    double v = std::sqrt(rep.q());
    for (auto& [x, c] : na) n_mat += c.eval(v) * rep.act_theta(x);
  }
  Eigen::FullPivLU<CMat> lu(n_mat);
  if (!lu.isInvertible() || lu.rcond() < 1e-10)
    throw SingularNormalization("pi(n_alpha) is not invertible at this point");
  CMat iota = rep.act(alg.nform_left(alg.intertwiner(simple_pos)));
  return lu.inverse() * iota;
}

CMat intertwiner_matrix_left_word(const InducedRep& rep, const std::vector<int>& word) {
  CMat m = CMat::Identity(rep.dim(), rep.dim());
  for (int i : word) m = m * intertwiner_matrix_left(rep, i);
  return m;
}

// vector of h (x) 1 in the principal series at parameter t (P = empty):
// right Bernstein form evaluated at t, in the basis ordered like coset_reps({}).
static CVec principal_vector(const Algebra& alg, const std::vector<int>& order,
                             const NElt& h, const std::vector<Cplx>& t, double v) {
  BForm right = alg.bernstein_right(h);
  CVec out = CVec::Zero((Int)order.size());
  for (auto& [u, au] : right.a) {
    int pos = -1;
    for (size_t k = 0; k < order.size(); ++k)
      if (order[k] == u) pos = (int)k;
    if (pos < 0) throw std::logic_error("principal_vector: index not found");
    out(pos) += eval_aelt(au, t, v);
  }
  return out;
}

CMat intertwiner_matrix_right(const InducedRep& source, const InducedRep& target,
                              int simple_pos) {
  const Algebra& alg = source.algebra();
  if (!source.parabolic().P().empty())
    throw Unsupported("right intertwiners implemented for P = empty only");
  double v = std::sqrt(source.q());
  const auto& order = source.coset_reps();
  // parameters: source t, target must be s(t)
  const std::vector<Cplx>& t = source.tP();
  const std::vector<Cplx>& st = target.tP();
  NElt iota = alg.nform_left(alg.intertwiner(simple_pos));
  Cplx nval = eval_aelt(alg.n_alpha(simple_pos), t, v);
  if (std::abs(nval) < 1e-12)
    throw SingularNormalization("n_alpha(t) = 0 at this point");
  CMat m = CMat::Zero(source.dim(), source.dim());
  for (size_t k = 0; k < order.size(); ++k) {
    NElt nw_iota = alg.mul(alg.basis_finite(order[k]), iota);
    m.col(k) = principal_vector(alg, order, nw_iota, st, v) / nval;
  }
  return m;
}

CMat intertwiner_matrix_right_path(const Parabolic& par0, const FinRep& delta0,
                                   double q, const std::vector<Cplx>& t_start,
                                   const std::vector<int>& g_word) {
  // pi(g, xi): M_t -> M_{g t}, right multiplication by iota^0_{g^{-1}};
  // apply the letters of g = s_{i_1} ... s_{i_k} from the last to the first.
  const Algebra& alg = par0.parent();
  const WeylGroup& w = alg.weyl();
  std::vector<Cplx> t = t_start;
  InducedRep cur(par0, delta0, t, q);
  CMat total = CMat::Identity(cur.dim(), cur.dim());
  for (auto it = g_word.rbegin(); it != g_word.rend(); ++it) {
    int s = w.simple_refl(*it);
    std::vector<Cplx> st(t.size());
    const IntMat& m = w.xmatrix(s);
    for (size_t i = 0; i < t.size(); ++i) {
      Cplx val = 1.0;
      for (size_t r = 0; r < t.size(); ++r) val *= std::pow(t[r], (double)m[r][i]);
      st[i] = val;
    }
    InducedRep next(par0, delta0, st, q);
    total = intertwiner_matrix_right(cur, next, *it) * total;
    t = st;
    cur = std::move(next);
  }
  return total;
}

}  // namespace hecke
